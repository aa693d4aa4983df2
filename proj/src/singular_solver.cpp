#include "bandopt/singular_solver.hpp"

#include "bandopt/errors.hpp"
#include "cascade.hpp"

namespace bandopt {

Solution solve_singular(const ProblemSpec& spec, const SolverOptions& opt) {
  if (spec.mu == 0.0) {
    throw UnsupportedError("solve_singular: mu = 0 is unsupported");
  }
  if (spec.mu < 0.0) {
    const ProblemSpec mirrored = reflect(spec);
    return detail::reflect_back(
        detail::Cascade(mirrored, false, opt).solve_singular());
  }
  return detail::Cascade(spec, false, opt).solve_singular();
}

}  // namespace bandopt
