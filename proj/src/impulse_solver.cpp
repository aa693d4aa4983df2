#include "bandopt/impulse_solver.hpp"

#include "bandopt/errors.hpp"
#include "cascade.hpp"

namespace bandopt {

namespace {

detail::Cascade make_cascade(const ProblemSpec& spec,
                             const SolverOptions& opt) {
  return detail::Cascade(spec, spec.mode == ControlMode::nonneg_impulse, opt);
}

}  // namespace

double gtilde(const ProblemSpec& spec, double B, const SolverOptions& opt) {
  return make_cascade(spec, opt).gtilde(B);
}

double solve_B1(const ProblemSpec& spec, const SolverOptions& opt) {
  return make_cascade(spec, opt).B1();
}

std::pair<double, double> A_bounds(const ProblemSpec& spec, double B,
                                   const SolverOptions& opt) {
  auto cascade = make_cascade(spec, opt);
  const double tol = 1e-9 * (spec.k + spec.ell);
  if (cascade.gtilde(B) < spec.k + spec.ell - tol) {
    throw std::domain_error("A_bounds: B below B1 (A_lower would exceed A_upper)");
  }
  return cascade.A_bounds(B);
}

std::pair<double, double> find_Uu(const ProblemSpec& spec, double A, double B,
                                  const SolverOptions& opt) {
  return make_cascade(spec, opt).find_Uu(A, B);
}

double Lambda2(const ProblemSpec& spec, double A, double B,
               const SolverOptions& opt) {
  return make_cascade(spec, opt).Lambda2(A, B);
}

double solve_B2(const ProblemSpec& spec, const SolverOptions& opt) {
  return make_cascade(spec, opt).B2();
}

double solve_Astar(const ProblemSpec& spec, double B,
                   const SolverOptions& opt) {
  return make_cascade(spec, opt).solve_Astar(B);
}

std::pair<double, double> find_dD(const ProblemSpec& spec, double A, double B,
                                  const SolverOptions& opt) {
  return make_cascade(spec, opt).find_dD(A, B);
}

double Lambda1(const ProblemSpec& spec, double A, double B,
               const SolverOptions& opt) {
  return make_cascade(spec, opt).Lambda1(A, B);
}

Solution solve_impulse(const ProblemSpec& spec, const SolverOptions& opt) {
  if (spec.mu == 0.0) {
    throw UnsupportedError("solve_impulse: mu = 0 is unsupported");
  }
  if (spec.mu < 0.0) {
    const ProblemSpec mirrored = reflect(spec);
    return detail::reflect_back(
        detail::Cascade(mirrored, false, opt).solve_impulse());
  }
  return detail::Cascade(spec, false, opt).solve_impulse();
}

}  // namespace bandopt
