#include "bandopt/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "rng.hpp"

namespace bandopt {

namespace {

struct RepTotals {
  double cost = 0.0;  // window cost
  double y1 = 0.0, y2 = 0.0;
  std::int64_t n1 = 0, n2 = 0;
};

struct StepParams {
  double dt, mu_dt, sig_sqdt;
  bool noise, trapezoid;
  double d, D, U, u, K, L, kc, lc;
};

struct Dump {
  std::FILE* file = nullptr;
  int stride = 1000;
};

// Policy application for one post-diffusion state. Returns the control cost
// charged this step. Impulse jumps are rare, so branches are fine there; the
// singular regulator clamps every step and is written branch-free.
template <bool kImpulse, bool kCount>
inline double apply_control(double& z, const StepParams& p, RepTotals& tot) {
  if constexpr (kImpulse) {
    if (z <= p.d) {
      const double amt = p.D - z;
      z = p.D;
      if constexpr (kCount) {
        ++tot.n1;
        tot.y1 += amt;
      }
      return p.K + p.kc * amt;
    }
    if (z >= p.u) {
      const double amt = z - p.U;
      z = p.U;
      if constexpr (kCount) {
        ++tot.n2;
        tot.y2 += amt;
      }
      return p.L + p.lc * amt;
    }
    return 0.0;
  } else {
    const double inc1 = std::max(p.d - z, 0.0);
    const double inc2 = std::max(z - p.u, 0.0);
    z += inc1 - inc2;
    if constexpr (kCount) {
      tot.n1 += inc1 > 0.0;
      tot.n2 += inc2 > 0.0;
      tot.y1 += inc1;
      tot.y2 += inc2;
    }
    return p.kc * inc1 + p.lc * inc2;
  }
}

template <bool kImpulse, bool kCount, bool kNoise, class HEval>
void run_steps_impl(double& z_io, detail::Xoshiro256pp& rng, std::int64_t n,
                    const StepParams& ps, HEval h, RepTotals& tot) {
  const auto& normal = detail::ziggurat();
  // Local copies: keeps the loop free of potential aliasing reloads.
  const StepParams p = ps;
  double z = z_io;
  double cost = 0.0, y1 = 0.0, y2 = 0.0;
  std::int64_t n1 = 0, n2 = 0;
  for (std::int64_t step = 0; step < n; ++step) {
    double hold = h(z) * p.dt;  // left-endpoint rule
    z += p.mu_dt;
    if constexpr (kNoise) z += p.sig_sqdt * normal(rng);
    if (p.trapezoid) hold = 0.5 * (hold + h(z) * p.dt);
    double ctrl;
    if constexpr (kImpulse) {
      ctrl = 0.0;
      if (z <= p.d) {
        const double amt = p.D - z;
        z = p.D;
        ++n1;
        y1 += amt;
        ctrl = p.K + p.kc * amt;
      } else if (z >= p.u) {
        const double amt = z - p.U;
        z = p.U;
        ++n2;
        y2 += amt;
        ctrl = p.L + p.lc * amt;
      }
    } else {
      const double inc1 = std::max(p.d - z, 0.0);
      const double inc2 = std::max(z - p.u, 0.0);
      z += inc1 - inc2;
      n1 += inc1 > 0.0;
      n2 += inc2 > 0.0;
      y1 += inc1;
      y2 += inc2;
      ctrl = p.kc * inc1 + p.lc * inc2;
    }
    cost += hold + ctrl;
  }
  z_io = z;
  if constexpr (kCount) {
    tot.cost += cost;
    tot.y1 += y1;
    tot.y2 += y2;
    tot.n1 += n1;
    tot.n2 += n2;
  }
}

template <bool kImpulse, bool kCount, class HEval>
void run_steps(double& z, detail::Xoshiro256pp& rng, std::int64_t n,
               const StepParams& p, HEval h, RepTotals& tot) {
  if (p.noise) {
    run_steps_impl<kImpulse, kCount, true>(z, rng, n, p, h, tot);
  } else {
    run_steps_impl<kImpulse, kCount, false>(z, rng, n, p, h, tot);
  }
}

// Dump variant: full loop with cumulative cost tracking; only used for the
// first replication when a path dump is requested.
template <bool kImpulse, class HEval>
void run_steps_dump(double& z, detail::Xoshiro256pp& rng, std::int64_t n,
                    std::int64_t n_burn, const StepParams& p, HEval h,
                    RepTotals& tot, double cum0, const Dump& dump) {
  const auto& normal = detail::ziggurat();
  double cum = cum0;
  RepTotals scratch;
  for (std::int64_t step = 0; step < n; ++step) {
    const bool in_window = step >= n_burn;
    double hold = h(z) * p.dt;
    z += p.mu_dt;
    if (p.noise) z += p.sig_sqdt * normal(rng);
    if (p.trapezoid) hold = 0.5 * (hold + h(z) * p.dt);
    const double ctrl = in_window ? apply_control<kImpulse, true>(z, p, tot)
                                  : apply_control<kImpulse, false>(z, p, scratch);
    if (in_window) tot.cost += hold + ctrl;
    cum += hold + ctrl;
    if ((step + 1) % dump.stride == 0) {
      std::fprintf(dump.file, "%.10g,%.10g,%.10g\n", (step + 1) * p.dt, z,
                   cum);
    }
  }
}

template <bool kImpulse, class HEval>
RepTotals run_replication(const ProblemSpec& spec, const BandPolicy& band,
                          const SimConfig& cfg, std::uint64_t rep, HEval h,
                          const Dump& dump) {
  detail::Xoshiro256pp rng(cfg.seed, rep);
  StepParams p;
  p.dt = cfg.dt;
  p.mu_dt = spec.mu * cfg.dt;
  p.sig_sqdt = std::sqrt(spec.sigma2 * cfg.dt);
  p.noise = spec.sigma2 > 0.0;
  p.trapezoid = cfg.trapezoid;
  p.d = band.d;
  p.D = band.D;
  p.U = band.U;
  p.u = band.u;
  p.K = band.mode == ControlMode::singular ? 0.0 : spec.K;
  p.L = band.mode == ControlMode::singular ? 0.0 : spec.L;
  p.kc = spec.k;
  p.lc = spec.ell;

  const auto n_steps =
      static_cast<std::int64_t>(std::llround(cfg.horizon / cfg.dt));
  const auto n_burn = std::min(
      n_steps, static_cast<std::int64_t>(std::llround(cfg.burn_in / cfg.dt)));

  double z = std::isnan(cfg.z0) ? 0.5 * (band.d + band.u) : cfg.z0;
  RepTotals tot;
  RepTotals scratch;

  // Initial adjustment at t = 0, outside the averaging window.
  double cum0 = apply_control<kImpulse, false>(z, p, scratch);

  if (dump.file) {
    std::fprintf(dump.file, "t,Z,cumulative_cost\n");
    std::fprintf(dump.file, "%.10g,%.10g,%.10g\n", 0.0, z, cum0);
    run_steps_dump<kImpulse>(z, rng, n_steps, n_burn, p, h, tot, cum0, dump);
    return tot;
  }
  run_steps<kImpulse, false>(z, rng, n_burn, p, h, scratch);
  run_steps<kImpulse, true>(z, rng, n_steps - n_burn, p, h, tot);
  return tot;
}

template <class HEval>
RepTotals dispatch_policy(const ProblemSpec& spec, const BandPolicy& band,
                          const SimConfig& cfg, std::uint64_t rep, HEval h,
                          const Dump& dump) {
  if (band.mode == ControlMode::singular) {
    return run_replication<false>(spec, band, cfg, rep, h, dump);
  }
  return run_replication<true>(spec, band, cfg, rep, h, dump);
}

RepTotals dispatch_holding(const ProblemSpec& spec, const BandPolicy& band,
                           const SimConfig& cfg, std::uint64_t rep,
                           const Dump& dump) {
  const HoldingCost& hc = spec.holding;
  switch (hc.family()) {
    case HoldingCost::Family::linear: {
      const double a = hc.minimizer(), bp = hc.param0(), c = hc.param1();
      return dispatch_policy(
          spec, band, cfg, rep,
          [=](double x) {
            return bp * std::max(a - x, 0.0) + c * std::max(x - a, 0.0);
          },
          dump);
    }
    case HoldingCost::Family::quadratic: {
      const double a = hc.minimizer(), q = hc.param0();
      return dispatch_policy(
          spec, band, cfg, rep,
          [=](double x) {
            const double s = x - a;
            return q * s * s;
          },
          dump);
    }
    default:
      return dispatch_policy(
          spec, band, cfg, rep, [&](double x) { return hc.h(x); }, dump);
  }
}

}  // namespace

SimResult simulate(const ProblemSpec& spec, const BandPolicy& band,
                   const SimConfig& cfg) {
  if (!(cfg.dt > 0.0)) {
    throw std::domain_error("simulate: dt must be > 0");
  }
  if (!(cfg.burn_in >= 0.0) || !(cfg.burn_in < cfg.horizon)) {
    throw std::domain_error("simulate: requires 0 <= burn_in < horizon");
  }
  if (cfg.replications < 1) {
    throw std::domain_error("simulate: replications must be >= 1");
  }
  if (cfg.dump_stride < 1) {
    throw std::domain_error("simulate: dump_stride must be >= 1");
  }
  if (!band.ordered()) {
    throw std::domain_error("simulate: band ordering invalid for mode");
  }

  const double window = cfg.horizon - cfg.burn_in;
  std::vector<double> acs(static_cast<std::size_t>(cfg.replications));
  SimResult res;
  double y1 = 0, y2 = 0, n1 = 0, n2 = 0;
  for (int rep = 0; rep < cfg.replications; ++rep) {
    Dump dump;
    if (rep == 0 && !cfg.dump_path.empty()) {
      dump.file = std::fopen(cfg.dump_path.c_str(), "w");
      if (!dump.file) {
        throw std::runtime_error("simulate: cannot open dump path " +
                                 cfg.dump_path);
      }
      dump.stride = cfg.dump_stride;
    }
    const RepTotals t = dispatch_holding(spec, band, cfg,
                                         static_cast<std::uint64_t>(rep), dump);
    if (dump.file) std::fclose(dump.file);
    acs[static_cast<std::size_t>(rep)] = t.cost / window;
    y1 += t.y1;
    y2 += t.y2;
    n1 += static_cast<double>(t.n1);
    n2 += static_cast<double>(t.n2);
  }
  const double r = static_cast<double>(cfg.replications);
  double mean = 0.0;
  for (double a : acs) mean += a;
  mean /= r;
  double var = 0.0;
  for (double a : acs) var += (a - mean) * (a - mean);
  res.ac_mean = mean;
  res.ac_stderr =
      cfg.replications > 1 ? std::sqrt(var / (r - 1.0)) / std::sqrt(r) : 0.0;
  res.n_up = n1 / (r * window);
  res.n_down = n2 / (r * window);
  res.y1_rate = y1 / (r * window);
  res.y2_rate = y2 / (r * window);
  return res;
}

}  // namespace bandopt
