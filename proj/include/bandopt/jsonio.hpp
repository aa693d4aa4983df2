#pragma once

#include <string>

#include <json.hpp>

#include "bandopt/band.hpp"
#include "bandopt/evaluator.hpp"
#include "bandopt/qvi.hpp"
#include "bandopt/simulator.hpp"

namespace bandopt {

/// Serializes with floating-point numbers rendered at 12 significant
/// digits (schema stability over round-trip exactness).
std::string dump_json12(const nlohmann::json& doc, int indent = 2);

nlohmann::json to_json(const Solution& sol);
nlohmann::json to_json(const VerifyReport& rep);
nlohmann::json to_json(const SimResult& res);
nlohmann::json evaluation_to_json(const Evaluation& ev);

}  // namespace bandopt
