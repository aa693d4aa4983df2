#pragma once

#include <cmath>
#include <string>

#include "bandopt/errors.hpp"

namespace bandopt {

struct RootOptions {
  double x_tol = 1e-12;
  int max_bracket_expansions = 80;
};

namespace detail {

inline bool opposite_signs(double fa, double fb) {
  return (fa <= 0.0 && fb >= 0.0) || (fa >= 0.0 && fb <= 0.0);
}

}  // namespace detail

/// Bisection on a bracketed sign change. f(lo) and f(hi) must have opposite
/// signs (infinities are fine, only signs are used). Returns the midpoint of
/// the final interval, |hi - lo| <= x_tol.
template <class F>
double bisect(F&& f, double lo, double hi, double flo, double fhi,
              const RootOptions& opt = {}, const char* stage = "bisect") {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!detail::opposite_signs(flo, fhi)) {
    throw NumericError(stage, "bracket does not contain a sign change",
                       std::abs(hi - lo));
  }
  const bool lo_neg = flo < 0.0;
  for (int i = 0; i < 200 && std::abs(hi - lo) > opt.x_tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == lo_neg) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

template <class F>
double bisect(F&& f, double lo, double hi, const RootOptions& opt = {},
              const char* stage = "bisect") {
  return bisect(f, lo, hi, f(lo), f(hi), opt, stage);
}

/// Expands a bracket from `start` in direction `dir` (+1/-1), doubling the
/// step from 1, until f changes sign relative to f(start). Returns the far
/// endpoint. Throws NumericError when max expansions are exceeded.
template <class F>
double expand_bracket(F&& f, double start, double f_start, int dir,
                      const RootOptions& opt = {},
                      const char* stage = "expand_bracket") {
  const bool start_neg = f_start < 0.0;
  double step = 1.0;
  double x = start;
  for (int i = 0; i < opt.max_bracket_expansions; ++i) {
    x = start + dir * step;
    const double fx = f(x);
    if (fx == 0.0 || (fx < 0.0) != start_neg) return x;
    step *= 2.0;
  }
  throw NumericError(stage, "bracket expansion exceeded max expansions",
                     step);
}

}  // namespace bandopt
