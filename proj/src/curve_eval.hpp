#pragma once

#include <optional>
#include <vector>

#include "bandopt/gcurve.hpp"
#include "bandopt/problem.hpp"

namespace bandopt::detail {

/// Solver-internal evaluator for the g family. Semantically identical to
/// eval_g / eval_g_prime / eval_F1 but amortizes the quadrature work: the
/// transform T(x) = int_a^x h'(y) e^{lambda (y-a)} dy (left of a) and its
/// decayed counterpart I(x) = int_a^x h'(y) e^{lambda (y-x)} dy (right of a)
/// are chained across a fixed-step lattice anchored at a, so each query only
/// integrates the final partial step. T and I depend on the problem
/// instance alone, not on (A, B), so one instance serves an entire solver cascade.
///
/// Not thread-safe; each solve owns its own instance.
class CurveEvaluator {
 public:
  CurveEvaluator(const ProblemSpec& spec, double quad_tol);

  double F1(double B, double x) const;
  double g(double A, double B, double x) const;
  double g_prime(double B, double x) const;

  /// int_lo^hi (g_{A,B}(x) + shift) dx, split at the holding-cost kink.
  double integral_g_plus(double A, double B, double lo, double hi,
                         double shift) const;

  const ProblemSpec& spec() const noexcept { return spec_; }
  double quad_tol() const noexcept { return quad_tol_; }

 private:
  double T(double x) const;  // x <= a
  double I(double x) const;  // x >= a
  double W(double x) const;  // x << a: int_{-inf}^x h'(y) e^{lambda(y-x)} dy
  double bbar() const;
  void extend_w_lattice(std::size_t j) const;

  const ProblemSpec& spec_;
  double quad_tol_;
  double seg_tol_;
  double part_tol_;
  double lam_;
  double a_;
  mutable std::vector<double> t_nodes_;  // T at a - j*step, j = 1..
  mutable std::vector<double> i_nodes_;  // I at a + j*step, j = 1..
  mutable std::vector<double> w_nodes_;  // W at a - j*step, j = 1..
  mutable std::optional<double> bbar_;
  static constexpr double kStep = 0.125;
};

}  // namespace bandopt::detail
