#include "bandopt/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace bandopt {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key())) {
      throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
    }
  }
}

double require_number(const json& obj, const std::string& key,
                      const std::string& where) {
  if (!obj.contains(key)) {
    throw ConfigError("missing key \"" + key + "\" in " + where);
  }
  if (!obj[key].is_number()) {
    throw ConfigError("key \"" + key + "\" in " + where + " must be a number");
  }
  return obj[key].get<double>();
}

double number_or(const json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) {
    throw ConfigError("key \"" + key + "\" must be a number");
  }
  return obj[key].get<double>();
}

HoldingCost parse_holding(const json& h) {
  if (!h.is_object()) {
    throw ConfigError("\"holding\" must be an object");
  }
  if (!h.contains("family") || !h["family"].is_string()) {
    throw ConfigError("\"holding.family\" must be a string");
  }
  const std::string family = h["family"].get<std::string>();
  if (family == "linear") {
    reject_unknown_keys(h, {"family", "p", "c", "a"}, "holding");
    return make_linear_holding(require_number(h, "p", "holding"),
                               require_number(h, "c", "holding"),
                               number_or(h, "a", 0.0));
  }
  if (family == "quadratic") {
    reject_unknown_keys(h, {"family", "q", "center"}, "holding");
    return make_quadratic_holding(require_number(h, "q", "holding"),
                                  require_number(h, "center", "holding"));
  }
  if (family == "power") {
    reject_unknown_keys(h, {"family", "exponent", "scale", "center"},
                        "holding");
    return make_power_holding(require_number(h, "exponent", "holding"),
                              require_number(h, "scale", "holding"),
                              require_number(h, "center", "holding"));
  }
  throw ConfigError("unknown holding family \"" + family + "\"");
}

ControlMode parse_mode(const json& cfg) {
  if (!cfg.contains("mode") || !cfg["mode"].is_string()) {
    throw ConfigError("\"mode\" must be a string");
  }
  const std::string mode = cfg["mode"].get<std::string>();
  if (mode == "impulse") return ControlMode::impulse;
  if (mode == "singular") return ControlMode::singular;
  if (mode == "nonneg" || mode == "nonneg-impulse") {
    return ControlMode::nonneg_impulse;
  }
  throw ConfigError("unknown mode \"" + mode +
                    "\" (expected impulse|singular|nonneg)");
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json cfg;
  try {
    cfg = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object()) {
    throw ConfigError("config root must be a JSON object");
  }
  reject_unknown_keys(
      cfg, {"mu", "sigma2", "K", "k", "L", "ell", "mode", "holding", "solver",
            "sim"},
      "config");
  if (!cfg.contains("holding")) {
    throw ConfigError("missing key \"holding\" in config");
  }

  RunConfig rc;
  rc.spec.mu = require_number(cfg, "mu", "config");
  rc.spec.sigma2 = require_number(cfg, "sigma2", "config");
  rc.spec.K = require_number(cfg, "K", "config");
  rc.spec.k = require_number(cfg, "k", "config");
  rc.spec.L = require_number(cfg, "L", "config");
  rc.spec.ell = require_number(cfg, "ell", "config");
  rc.spec.mode = parse_mode(cfg);
  rc.spec.holding = parse_holding(cfg["holding"]);

  if (cfg.contains("solver")) {
    const json& s = cfg["solver"];
    if (!s.is_object()) throw ConfigError("\"solver\" must be an object");
    reject_unknown_keys(s, {"tol_root", "tol_quad"}, "solver");
    rc.solver.tol_root = number_or(s, "tol_root", rc.solver.tol_root);
    rc.solver.tol_quad = number_or(s, "tol_quad", rc.solver.tol_quad);
    if (!(rc.solver.tol_root > 0.0) || !(rc.solver.tol_quad > 0.0)) {
      throw ConfigError("solver tolerances must be positive");
    }
  }
  if (cfg.contains("sim")) {
    const json& s = cfg["sim"];
    if (!s.is_object()) throw ConfigError("\"sim\" must be an object");
    reject_unknown_keys(
        s, {"dt", "horizon", "burn_in", "replications", "seed", "z0"}, "sim");
    rc.sim.dt = number_or(s, "dt", rc.sim.dt);
    rc.sim.horizon = number_or(s, "horizon", rc.sim.horizon);
    rc.sim.burn_in = number_or(s, "burn_in", rc.sim.burn_in);
    rc.sim.replications = static_cast<int>(
        number_or(s, "replications", rc.sim.replications));
    rc.sim.seed = static_cast<std::uint64_t>(
        number_or(s, "seed", static_cast<double>(rc.sim.seed)));
    rc.sim.z0 = number_or(s, "z0", rc.sim.z0);
  }
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace bandopt
