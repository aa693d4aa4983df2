#pragma once

#include <string>
#include <vector>

#include "bandopt/holding.hpp"

namespace bandopt {

enum class ControlMode { impulse, singular, nonneg_impulse };

std::string to_string(ControlMode mode);

/// Full problem instance: netput drift/variance, adjustment costs, holding
/// cost, control class. Immutable after construction; safe to share across
/// threads.
struct ProblemSpec {
  double mu = 1.0;      // drift per unit time, != 0
  double sigma2 = 1.0;  // variance per unit time, > 0
  double K = 0.0;       // upward fixed cost
  double k = 1.0;       // upward proportional cost
  double L = 0.0;       // downward fixed cost
  double ell = 1.0;     // downward proportional cost
  HoldingCost holding;
  ControlMode mode = ControlMode::impulse;

  double lambda() const noexcept { return 2.0 * mu / sigma2; }
};

/// Reflected instance x -> -x: drift flips, holding cost mirrors, and the
/// upward/downward cost pairs swap roles.
ProblemSpec reflect(const ProblemSpec& spec);

struct ValidationIssue {
  std::string invariant;  // short name, e.g. "lambda undefined"
  std::string detail;     // witnessing x / divergent tail estimate
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const noexcept { return issues.empty(); }
  bool mentions(const std::string& needle) const;
};

struct ValidationOptions {
  int grid_points = 201;       // convexity / sign sampling grid
  double grid_halfwidth = 40;  // grid spans [a - w, a + w]
  double tail_tol = 1e-12;     // tail truncation convergence threshold
};

/// Checks every ProblemSpec/HoldingCost invariant and reports violations.
/// Never throws; an empty report means all checks pass.
ValidationReport validate_spec(const ProblemSpec& spec,
                               const ValidationOptions& opt = {});

}  // namespace bandopt
