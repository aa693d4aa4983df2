#pragma once

#include <functional>
#include <map>
#include <string>

#include "bandopt/band.hpp"
#include "bandopt/problem.hpp"

namespace bandopt {

/// Analytic performance evaluation of a band policy via the Poisson
/// equation: the long-run average cost gamma and the relative value
/// function V (unique up to a constant, anchored at V(m) = 0).
struct Evaluation {
  double gamma = 0.0;
  double m = 0.0;         // integration anchor (default: holding minimizer)
  double Vprime_m = 0.0;  // V'(m)
  std::map<std::string, double> coefficients;
  std::function<double(double)> V;       // on [d, u]
  std::function<double(double)> Vprime;  // on [d, u]
  BandPolicy band;
};

struct EvaluatorOptions {
  double quad_tol = 1e-10;
  // NaN means "use the holding-cost minimizer" (the convenient anchor).
  double anchor = std::numeric_limits<double>::quiet_NaN();
};

/// Impulse band {d < D < U < u}: gamma and V'(m) from the 2x2 linear system
/// of the boundary conditions V(d)-V(D) = K + k(D-d) and
/// V(u)-V(U) = L + ell(u-U). Purely linear-algebraic: accepts any numeric
/// holding cost (validation warnings are the caller's concern, not errors).
Evaluation evaluate_impulse(const ProblemSpec& spec, const BandPolicy& band,
                            const EvaluatorOptions& opt = {});

/// Singular band {d < u}: boundary conditions V'(d) = -k, V'(u) = ell.
Evaluation evaluate_singular(const ProblemSpec& spec, const BandPolicy& band,
                             const EvaluatorOptions& opt = {});

/// Piecewise extension of V to the whole line: slope -k below d, the band
/// value function inside, slope +ell above u. Continuous by construction.
std::function<double(double)> extend_value_function(const ProblemSpec& spec,
                                                    const BandPolicy& band,
                                                    const Evaluation& eval);

}  // namespace bandopt
