#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "bandopt/band.hpp"
#include "bandopt/problem.hpp"

namespace bandopt {

struct SimConfig {
  double dt = 1e-3;
  double horizon = 2e5;    // total simulated time
  double burn_in = 1e3;    // initial time excluded from averages
  int replications = 16;
  std::uint64_t seed = 12345;
  // NaN selects the band midpoint.
  double z0 = std::numeric_limits<double>::quiet_NaN();
  bool trapezoid = false;  // holding-cost rule; default is left-endpoint
  std::string dump_path;   // optional CSV path dump (first replication)
  int dump_stride = 1000;
};

struct SimResult {
  double ac_mean = 0.0;    // estimated long-run average cost
  double ac_stderr = 0.0;  // standard error across replications
  double n_up = 0.0;       // upward adjustments per unit time
  double n_down = 0.0;     // downward adjustments per unit time
  double y1_rate = 0.0;    // upward volume per unit time
  double y2_rate = 0.0;    // downward volume per unit time
};

/// Euler scheme Z <- Z + mu dt + sigma sqrt(dt) xi. Impulse bands jump to
/// D / U on threshold crossing at grid times (overshoot charged at the
/// actual state); singular bands apply the discrete two-sided regulator.
/// Deterministic: identical (spec, band, cfg) give bit-identical results.
SimResult simulate(const ProblemSpec& spec, const BandPolicy& band,
                   const SimConfig& cfg);

}  // namespace bandopt
