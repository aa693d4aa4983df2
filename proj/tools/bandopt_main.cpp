// Command-line front end: solve / evaluate / verify / simulate for
// Brownian inventory control band policies.
//
// Exit codes: 0 ok, 1 usage or config error, 2 validation failure,
// 3 numeric failure, 4 verification failure.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bandopt/config.hpp"
#include "bandopt/evaluator.hpp"
#include "bandopt/impulse_solver.hpp"
#include "bandopt/jsonio.hpp"
#include "bandopt/nonneg_solver.hpp"
#include "bandopt/qvi.hpp"
#include "bandopt/simulator.hpp"
#include "bandopt/singular_solver.hpp"

namespace {

using namespace bandopt;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitVerifyFailed = 4;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ValidationFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structural problems (zero drift, nonpositive variance) are fatal for
// every command; shape warnings on h only block the solvers, which rely
// on convexity, derivative signs and an integrable tail. Evaluation,
// verification and simulation are well defined without them and proceed
// with a warning.
void check_validation(const ProblemSpec& spec, bool strict) {
  const ValidationReport rep = validate_spec(spec);
  if (rep.ok()) return;
  std::ostringstream msg;
  for (const auto& issue : rep.issues) {
    msg << issue.invariant << ": " << issue.detail << "\n";
  }
  const bool fatal = strict || rep.mentions("lambda undefined") ||
                     rep.mentions("sigma2");
  if (fatal) {
    throw ValidationFailure(msg.str());
  }
  std::cerr << "warning: holding-cost checks failed (continuing):\n"
            << msg.str();
}

BandPolicy parse_band(const std::string& text, ControlMode mode) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      vals.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("malformed --band component: \"" + item + "\"");
    }
  }
  BandPolicy band;
  band.mode = mode;
  if (mode == ControlMode::singular) {
    if (vals.size() != 2) {
      throw UsageError("singular mode expects --band d,u");
    }
    band.d = vals[0];
    band.D = vals[0];
    band.U = vals[1];
    band.u = vals[1];
  } else {
    if (vals.size() != 4) {
      throw UsageError("expected --band d,D,U,u");
    }
    band.d = vals[0];
    band.D = vals[1];
    band.U = vals[2];
    band.u = vals[3];
  }
  if (!band.ordered()) {
    throw UsageError("band ordering invalid for mode");
  }
  return band;
}

Solution dispatch_solve(const RunConfig& rc) {
  switch (rc.spec.mode) {
    case ControlMode::singular:
      return solve_singular(rc.spec, rc.solver);
    case ControlMode::nonneg_impulse:
      return solve_nonneg(rc.spec, rc.solver);
    case ControlMode::impulse:
      break;
  }
  return solve_impulse(rc.spec, rc.solver);
}

Evaluation dispatch_evaluate(const ProblemSpec& spec, const BandPolicy& band) {
  if (band.mode == ControlMode::singular) {
    return evaluate_singular(spec, band);
  }
  return evaluate_impulse(spec, band);
}

void emit(const nlohmann::json& doc) { std::cout << dump_json12(doc) << "\n"; }

int cmd_solve(const std::string& config_path) {
  const RunConfig rc = load_config(config_path);
  check_validation(rc.spec, /*strict=*/true);
  const Solution sol = dispatch_solve(rc);
  emit(to_json(sol));
  return kExitOk;
}

int cmd_evaluate(const std::string& config_path,
                 const std::optional<std::string>& band_text, int grid,
                 const std::string& csv_path) {
  if (grid < 2) {
    throw UsageError("--grid must be at least 2 points");
  }
  const RunConfig rc = load_config(config_path);
  check_validation(rc.spec, /*strict=*/false);
  const BandPolicy band = band_text
                              ? parse_band(*band_text, rc.spec.mode)
                              : dispatch_solve(rc).policy;
  const Evaluation ev = dispatch_evaluate(rc.spec, band);
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) {
      throw UsageError("cannot open --csv path " + csv_path);
    }
    auto f = extend_value_function(rc.spec, band, ev);
    csv << "x,V,Vprime,GammaV_plus_h\n";
    const double d = band.d, u = band.u;
    const double delta = 1e-5 * (u - d);
    char line[160];
    for (int i = 0; i < grid; ++i) {
      const double x = d + (u - d) * i / (grid - 1);
      const double xi = std::min(std::max(x, d + delta), u - delta);
      const double vpp =
          (ev.Vprime(xi + delta) - ev.Vprime(xi - delta)) / (2 * delta);
      const double poisson = 0.5 * rc.spec.sigma2 * vpp +
                             rc.spec.mu * ev.Vprime(x) +
                             rc.spec.holding.h(x);
      std::snprintf(line, sizeof(line), "%.12g,%.12g,%.12g,%.12g\n", x,
                    f(x), ev.Vprime(x), poisson);
      csv << line;
    }
  }
  emit(evaluation_to_json(ev));
  return kExitOk;
}

int cmd_verify(const std::string& config_path,
               const std::optional<std::string>& band_text, double span,
               int points) {
  if (span <= 0 || points < 8) {
    throw UsageError("--span must be > 0 and --points >= 8");
  }
  const RunConfig rc = load_config(config_path);
  check_validation(rc.spec, /*strict=*/false);
  // default: verify the freshly solved optimum
  const BandPolicy band = band_text
                              ? parse_band(*band_text, rc.spec.mode)
                              : dispatch_solve(rc).policy;
  const Evaluation ev = dispatch_evaluate(rc.spec, band);
  GridSpec grid;
  grid.span = span;
  grid.points = points;
  const VerifyReport rep = verify(rc.spec, band, ev, grid);
  emit(to_json(rep));
  return rep.pass ? kExitOk : kExitVerifyFailed;
}

int cmd_simulate(const std::string& config_path,
                 const std::optional<std::string>& band_text,
                 const SimConfig& overrides, const CLI::App& cmd) {
  const RunConfig rc = load_config(config_path);
  check_validation(rc.spec, /*strict=*/false);
  const BandPolicy band = band_text
                              ? parse_band(*band_text, rc.spec.mode)
                              : dispatch_solve(rc).policy;
  SimConfig cfg = rc.sim;
  if (cmd.count("--dt")) cfg.dt = overrides.dt;
  if (cmd.count("--horizon")) cfg.horizon = overrides.horizon;
  if (cmd.count("--burn-in")) cfg.burn_in = overrides.burn_in;
  if (cmd.count("--reps")) cfg.replications = overrides.replications;
  if (cmd.count("--seed")) cfg.seed = overrides.seed;
  if (cmd.count("--z0")) cfg.z0 = overrides.z0;
  if (cmd.count("--dump-path")) cfg.dump_path = overrides.dump_path;
  if (cmd.count("--dump-stride")) cfg.dump_stride = overrides.dump_stride;
  if (cfg.replications < 1) {
    throw UsageError("--reps must be >= 1");
  }
  if (!(cfg.dt > 0) || !(cfg.burn_in >= 0) || !(cfg.burn_in < cfg.horizon)) {
    throw UsageError("simulation requires dt > 0 and 0 <= burn-in < horizon");
  }
  if (cfg.dump_stride < 1) {
    throw UsageError("--dump-stride must be >= 1");
  }
  const SimResult res = simulate(rc.spec, band, cfg);
  emit(to_json(res));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Optimal control-band policies for Brownian inventory models: "
      "free-boundary solvers, analytic band evaluation, lower-bound "
      "verification and Monte Carlo simulation"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> band_text;
  int grid = 201;
  std::string csv_path;
  double span = 5.0;
  int points = 2000;
  SimConfig sim_over;

  auto* solve = app.add_subcommand("solve", "Solve the free boundary problem");
  solve->add_option("config", config_path, "problem config (JSON)")
      ->required();

  auto* evaluate =
      app.add_subcommand("evaluate", "Evaluate a band policy analytically");
  evaluate->add_option("config", config_path)->required();
  evaluate->add_option("--band", band_text,
                       "d,D,U,u (impulse/nonneg) or d,u (singular); "
                       "defaults to the solved optimum");
  evaluate->add_option("--grid", grid, "CSV grid points");
  evaluate->add_option("--csv", csv_path, "write V/V' grid table to file");

  auto* verify_cmd = app.add_subcommand(
      "verify", "Check the lower-bound certificate for a band");
  verify_cmd->add_option("config", config_path)->required();
  verify_cmd->add_option("--band", band_text);
  verify_cmd->add_option("--span", span, "grid extends [d-span, u+span]");
  verify_cmd->add_option("--points", points, "grid size");

  auto* simulate_cmd =
      app.add_subcommand("simulate", "Monte Carlo simulation of the band");
  simulate_cmd->add_option("config", config_path)->required();
  simulate_cmd->add_option("--band", band_text);
  simulate_cmd->add_option("--dt", sim_over.dt);
  simulate_cmd->add_option("--horizon", sim_over.horizon);
  simulate_cmd->add_option("--burn-in", sim_over.burn_in);
  simulate_cmd->add_option("--reps", sim_over.replications);
  simulate_cmd->add_option("--seed", sim_over.seed);
  simulate_cmd->add_option("--z0", sim_over.z0);
  simulate_cmd->add_option("--dump-path", sim_over.dump_path);
  simulate_cmd->add_option("--dump-stride", sim_over.dump_stride);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(config_path);
    if (evaluate->parsed()) {
      return cmd_evaluate(config_path, band_text, grid, csv_path);
    }
    if (verify_cmd->parsed()) {
      return cmd_verify(config_path, band_text, span, points);
    }
    return cmd_simulate(config_path, band_text, sim_over, *simulate_cmd);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationFailure& e) {
    std::cerr << "validation failed:\n" << e.what();
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return kExitValidation;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what()
              << " (achieved bound " << e.achieved_bound() << ")\n";
    return kExitNumeric;
  } catch (const std::domain_error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
