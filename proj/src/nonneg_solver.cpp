#include "bandopt/nonneg_solver.hpp"

#include "bandopt/errors.hpp"
#include "cascade.hpp"

namespace bandopt {

Solution solve_nonneg(const ProblemSpec& spec, const SolverOptions& opt) {
  if (spec.mu == 0.0) {
    throw UnsupportedError("solve_nonneg: mu = 0 is unsupported");
  }
  if (spec.mu < 0.0) {
    throw UnsupportedError(
        "solve_nonneg: mu < 0 is unsupported (no reflection on [0, inf))");
  }
  if (spec.holding.minimizer() < 0.0) {
    throw std::domain_error("solve_nonneg: requires minimizer a >= 0");
  }
  return detail::Cascade(spec, true, opt).solve_impulse();
}

}  // namespace bandopt
