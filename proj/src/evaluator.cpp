#include "bandopt/evaluator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bandopt/errors.hpp"
#include "bandopt/quadrature.hpp"

namespace bandopt {

namespace {

// Quadrature split at the holding-cost kink when it lies inside the range.
template <class F>
double integrate(F&& f, double lo, double hi, double kink, double tol) {
  const double a = std::min(lo, hi), b = std::max(lo, hi);
  double v;
  if (a < kink && kink < b) {
    v = adaptive_simpson(f, a, kink, 0.5 * tol) +
        adaptive_simpson(f, kink, b, 0.5 * tol);
  } else {
    v = adaptive_simpson(f, a, b, tol);
  }
  return lo <= hi ? v : -v;
}

struct Core {
  // Immutable data captured by the V / V' closures.
  double lam, mu, m, gamma, vpm;
  HoldingCost holding;
  double quad_tol;

  // J(t) = int_m^t h(y) e^{lambda (y-t)} dy
  double J(double t) const {
    if (t == m) return 0.0;
    auto f = [&](double y) { return holding.h(y) * std::exp(lam * (y - t)); };
    return integrate(f, m, t, holding.minimizer(), quad_tol);
  }

  double H(double t) const {  // int_m^t h
    if (t == m) return 0.0;
    auto f = [&](double y) { return holding.h(y); };
    return integrate(f, m, t, holding.minimizer(), quad_tol);
  }

  double vprime(double x) const {
    return (vpm - gamma / mu) * std::exp(lam * (m - x)) + gamma / mu -
           (lam / mu) * J(x);
  }

  // V(x) = int_m^x V'(s) ds with the double integral collapsed by parts:
  // int_m^x J(s) ds = (1/lambda) [int_m^x h - J(x)].
  double value(double x) const {
    return (vpm - gamma / mu) * (1.0 - std::exp(lam * (m - x))) / lam +
           (gamma / mu) * (x - m) - (H(x) - J(x)) / mu;
  }
};

double pick_anchor(const ProblemSpec& spec, const EvaluatorOptions& opt) {
  return std::isnan(opt.anchor) ? spec.holding.minimizer() : opt.anchor;
}

void require_lambda(const ProblemSpec& spec, const char* stage) {
  if (spec.mu == 0.0 || spec.lambda() == 0.0 ||
      !std::isfinite(spec.lambda())) {
    throw UnsupportedError(std::string(stage) + ": requires mu != 0");
  }
}

Evaluation finish(const ProblemSpec& spec, const BandPolicy& band,
                  double gamma, double vpm, double m, double quad_tol,
                  std::map<std::string, double> coeffs) {
  Core core{spec.lambda(), spec.mu,     m,       gamma,
            vpm,           spec.holding, quad_tol};
  Evaluation ev;
  ev.gamma = gamma;
  ev.m = m;
  ev.Vprime_m = vpm;
  ev.coefficients = std::move(coeffs);
  ev.band = band;
  ev.V = [core](double x) { return core.value(x); };
  ev.Vprime = [core](double x) { return core.vprime(x); };
  return ev;
}

}  // namespace

Evaluation evaluate_impulse(const ProblemSpec& spec, const BandPolicy& band,
                            const EvaluatorOptions& opt) {
  require_lambda(spec, "evaluate_impulse");
  if (!(band.d < band.D && band.D < band.U && band.U < band.u)) {
    throw std::domain_error("evaluate_impulse: requires d < D < U < u");
  }
  const double lam = spec.lambda();
  const double mu = spec.mu;
  const double m = pick_anchor(spec, opt);
  const double tol = opt.quad_tol;
  Core core{lam, mu, m, 0.0, 0.0, spec.holding, tol};

  // a1, a2 and the inner integrals of b1, b2 have closed forms.
  const double a1 =
      (std::exp(lam * (m - band.d)) - std::exp(lam * (m - band.D))) / lam;
  const double a2 =
      (std::exp(lam * (m - band.U)) - std::exp(lam * (m - band.u))) / lam;
  const double b1 = -((band.D - band.d) - a1) / mu;
  const double b2 = ((band.u - band.U) - a2) / mu;
  // c integrals collapsed by parts: int_p^q int_m^x h(y) e^{lambda(y-x)} dy dx
  //   = (1/lambda) [J(p) - J(q) + int_p^q h].
  const double c1 =
      -(core.J(band.d) - core.J(band.D) + core.H(band.D) - core.H(band.d)) /
      mu;
  const double c2 =
      (core.J(band.U) - core.J(band.u) + core.H(band.u) - core.H(band.U)) /
      mu;

  const double r1 = c1 + spec.K + spec.k * (band.D - band.d);
  const double r2 = c2 + spec.L + spec.ell * (band.u - band.U);
  const double den = a2 * b1 + a1 * b2;
  const double scale = std::abs(a1 * b2) + std::abs(a2 * b1) +
                       std::numeric_limits<double>::min();
  if (std::abs(den) < 1e-14 * scale) {
    throw NumericError("evaluate_impulse", "degenerate 2x2 system",
                       std::abs(den));
  }
  const double gamma = (a1 * r2 + a2 * r1) / den;
  const double vpm = (b1 * r2 - b2 * r1) / den;

  return finish(spec, band, gamma, vpm, m, tol,
                {{"a1", a1},
                 {"a2", a2},
                 {"b1", b1},
                 {"b2", b2},
                 {"c1", c1},
                 {"c2", c2}});
}

Evaluation evaluate_singular(const ProblemSpec& spec, const BandPolicy& band,
                             const EvaluatorOptions& opt) {
  require_lambda(spec, "evaluate_singular");
  if (!(band.d < band.u)) {
    throw std::domain_error("evaluate_singular: requires d < u");
  }
  const double lam = spec.lambda();
  const double mu = spec.mu;
  const double m = pick_anchor(spec, opt);
  const double tol = opt.quad_tol;
  Core core{lam, mu, m, 0.0, 0.0, spec.holding, tol};

  const double d1 = std::exp(lam * (m - band.d));
  const double d2 = std::exp(lam * (m - band.u));
  const double e1 = (d1 - 1.0) / mu;
  const double e2 = (1.0 - d2) / mu;
  const double f1 = -(lam / mu) * core.J(band.d);
  const double f2 = (lam / mu) * core.J(band.u);

  const double den = d1 * e2 + d2 * e1;
  const double scale = std::abs(d1 * e2) + std::abs(d2 * e1) +
                       std::numeric_limits<double>::min();
  if (std::abs(den) < 1e-14 * scale) {
    throw NumericError("evaluate_singular", "degenerate 2x2 system",
                       std::abs(den));
  }
  const double gamma =
      (d1 * (f2 + spec.ell) + d2 * (f1 + spec.k)) / den;
  const double vpm = (e1 * (f2 + spec.ell) - e2 * (f1 + spec.k)) / den;

  return finish(spec, band, gamma, vpm, m, tol,
                {{"d1", d1},
                 {"d2", d2},
                 {"e1", e1},
                 {"e2", e2},
                 {"f1", f1},
                 {"f2", f2}});
}

std::function<double(double)> extend_value_function(const ProblemSpec& spec,
                                                    const BandPolicy& band,
                                                    const Evaluation& eval) {
  const double d = band.d, u = band.u;
  const bool singular = band.mode == ControlMode::singular;
  const double K = singular ? 0.0 : spec.K;
  const double L = singular ? 0.0 : spec.L;
  const double k = spec.k, ell = spec.ell;
  const double D = singular ? band.d : band.D;
  const double U = singular ? band.u : band.U;
  const double VD = eval.V(D);
  const double VU = eval.V(U);
  auto V = eval.V;
  return [=](double x) {
    if (x < d) return K + k * (D - x) + VD;
    if (x > u) return L + ell * (x - U) + VU;
    return V(x);
  };
}

}  // namespace bandopt
