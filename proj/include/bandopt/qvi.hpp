#pragma once

#include "bandopt/band.hpp"
#include "bandopt/evaluator.hpp"
#include "bandopt/problem.hpp"

namespace bandopt {

struct GridSpec {
  double span = 5.0;  // grid covers [d - span, u + span] (clamped at 0 nonneg)
  int points = 2000;
};

/// Numerical certificate for the lower-bound (verification) theorem:
/// (i)   Gamma f + h - gamma >= 0 on the grid,
/// (ii)  f(y) - f(x) <= K + k (x - y) for y < x,
/// (iii) f(y) - f(x) <= L + ell (y - x) for x < y,
/// plus the |f'| boundedness diagnostic. pass iff (i) >= -tol and
/// (ii), (iii) <= tol. Report-only: never throws on failure.
struct VerifyReport {
  double poisson_min = 0.0;     // min over grid of Gamma f + h - gamma
  double lbK_max = 0.0;         // max over y < x of f(y)-f(x)-K-k(x-y)
  double lbL_max = 0.0;         // max over x < y of f(y)-f(x)-L-ell(y-x)
  double fprime_bound = 0.0;    // sup|f'| - max(k, ell, sup_[d,u] |g|)
  bool pass = false;
  double tol = 1e-6;
  double grid_lo = 0.0, grid_hi = 0.0;
  int grid_points = 0;
  double poisson_min_fd = 0.0;  // secondary check: f'' by finite differences
  bool kink_offset_applied = false;
};

VerifyReport verify(const ProblemSpec& spec, const BandPolicy& band,
                    const Evaluation& eval, const GridSpec& grid = {},
                    double tol = 1e-6);

}  // namespace bandopt
