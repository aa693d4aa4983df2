#pragma once

#include "bandopt/problem.hpp"
#include "bandopt/roots.hpp"

namespace bandopt {

inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr double kGCap = 1e12;  // evaluation cap; bands live well inside

/// One member of the two-parameter solution family of the derivative ODE
/// (sigma^2/2) g'' + mu g' + h' = 0. g(a) = A - B exactly.
struct GCurve {
  const ProblemSpec* spec = nullptr;
  double A = 0.0;
  double B = 0.0;
  double quad_tol = kDefaultQuadTol;
};

/// F1(B, x) = B - (1/mu) int_a^x h'(y) e^{lambda (y-a)} dy.
/// g'(x) = lambda F1(B,x) e^{-lambda (x-a)}; the extrema of g are its roots.
double eval_F1(const ProblemSpec& spec, double B, double x,
               double quad_tol = kDefaultQuadTol);

double eval_g(const GCurve& curve, double x);
double eval_g_prime(const GCurve& curve, double x);

/// Bbar = -(1/mu) int_{-inf}^a h'(y) e^{lambda (y-a)} dy, by leftward
/// truncation until increments fall below quad_tol. Requires lambda > 0.
double compute_Bbar(const ProblemSpec& spec,
                    double quad_tol = kDefaultQuadTol);

/// Nonnegative-inventory variant: lower limit 0 instead of -inf.
double compute_Bbar1(const ProblemSpec& spec,
                     double quad_tol = kDefaultQuadTol);

struct ExtremaPair {
  double x1 = 0.0;  // local minimizer, <= a
  double x2 = 0.0;  // local maximizer, > a
  bool x1_clamped_at_zero = false;  // nonneg mode only
};

/// Locates the extrema of g_{.,B}: x1 = root of F1 in (-inf, a) (or [0, a)
/// with clamping when nonneg), x2 = root in (a, inf). Bisection on the
/// monotone branches of F1.
ExtremaPair find_extrema(const ProblemSpec& spec, double B, bool nonneg,
                         double quad_tol = kDefaultQuadTol,
                         const RootOptions& ropt = {});

namespace detail {
// Internal variants taking precomputed constants, used by the solver
// cascades to avoid recomputing tail integrals in inner loops.
ExtremaPair find_extrema_with(const ProblemSpec& spec, double B, bool nonneg,
                              double Bbar_or_Bbar1, double quad_tol,
                              const RootOptions& ropt);

// W(x) = int_{-inf}^x h'(y) e^{lambda (y-x)} dy for x < a; the stable
// far-left route to g (all integrand exponents <= 0).
double tail_transform(const ProblemSpec& spec, double x, double quad_tol);
}  // namespace detail

}  // namespace bandopt
