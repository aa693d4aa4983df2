#pragma once

#include <map>
#include <string>

#include "bandopt/problem.hpp"

namespace bandopt {

/// Control band {d, D, U, u}: order up to D on hitting d, down to U on
/// hitting u. Singular policies are the degenerate case D = d, U = u.
/// alpha is the nonnegativity multiplier (nonneg mode only, else 0).
struct BandPolicy {
  double d = 0.0;
  double D = 0.0;
  double U = 0.0;
  double u = 0.0;
  ControlMode mode = ControlMode::impulse;
  double alpha = 0.0;

  bool ordered() const noexcept {
    if (mode == ControlMode::singular) return d < u && D == d && U == u;
    double lo = mode == ControlMode::nonneg_impulse ? 0.0 : d;
    return lo <= d && d < D && D < U && U < u;
  }
};

struct SolverOptions {
  double tol_root = 1e-12;  // on band/cascade parameters
  double tol_quad = 1e-10;  // quadrature absolute tolerance
  int max_bracket_expansions = 80;
};

/// Solver output: optimal band, cost, curve constants, cascade constants
/// and the defect magnitudes of the defining conditions.
struct Solution {
  BandPolicy policy;
  double gamma = 0.0;
  double A_star = 0.0;
  double B_star = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double B_bar = 0.0;  // nonneg mode stores Bbar1 here
  double B1 = 0.0;
  double B2 = 0.0;
  std::map<std::string, double> residuals;
  bool reflected = false;  // solved on the mu<0 reflection and mapped back
};

}  // namespace bandopt
