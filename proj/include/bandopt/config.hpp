#pragma once

#include <stdexcept>
#include <string>

#include "bandopt/band.hpp"
#include "bandopt/problem.hpp"
#include "bandopt/simulator.hpp"

namespace bandopt {

/// Config file / schema violation (maps to CLI exit 1).
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  ProblemSpec spec;
  SolverOptions solver;
  SimConfig sim;
};

/// Parses the JSON problem config. Unknown keys are rejected (fail-fast).
/// Schema:
///   {"mu":..., "sigma2":..., "K":..., "k":..., "L":..., "ell":...,
///    "mode": "impulse|singular|nonneg",
///    "holding": {"family":"linear|quadratic|power", ...params},
///    "solver": {"tol_root":..., "tol_quad":...},          (optional)
///    "sim": {"dt":..., "horizon":..., "burn_in":...,      (optional)
///            "replications":..., "seed":..., "z0":...}}
/// Semantic violations (nonpositive slopes etc.) throw std::invalid_argument
/// so callers can distinguish them from schema errors.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

}  // namespace bandopt
