#pragma once

#include <cmath>
#include <utility>

#include "bandopt/errors.hpp"

namespace bandopt {

inline constexpr int kDefaultQuadMaxDepth = 60;

namespace detail {

inline double simpson_step(double a, double b, double fa, double fm,
                           double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson_rec(F& f, double a, double b, double fa, double fm,
                            double fb, double whole, double tol, int depth,
                            int max_depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  if (!std::isfinite(flm) || !std::isfinite(frm)) {
    throw NumericError("adaptive_simpson", "non-finite integrand value",
                       std::abs(whole));
  }
  const double left = simpson_step(a, m, fa, flm, fm);
  const double right = simpson_step(m, b, fm, frm, fb);
  const double err = left + right - whole;
  if (std::abs(err) <= 15.0 * tol) {
    return left + right + err / 15.0;
  }
  if (depth >= max_depth) {
    throw NumericError("adaptive_simpson", "max depth reached",
                       std::abs(err) / 15.0);
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1,
                              max_depth) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol,
                              depth + 1, max_depth);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] with absolute tolerance.
/// Handles a > b by antisymmetry. Throws NumericError (with the achieved
/// error bound) on non-convergence or non-finite integrand values.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol,
                        int max_depth = kDefaultQuadMaxDepth) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb)) {
    throw NumericError("adaptive_simpson", "non-finite integrand value", 0.0);
  }
  const double whole = detail::simpson_step(a, b, fa, fm, fb);
  return sign * detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole,
                                             abs_tol, 0, max_depth);
}

}  // namespace bandopt
