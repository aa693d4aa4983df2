#include "bandopt/gcurve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bandopt/quadrature.hpp"
#include "extrema_impl.hpp"

namespace bandopt {

namespace {

double require_positive_lambda(const ProblemSpec& spec, const char* stage) {
  const double lam = spec.lambda();
  if (!(lam > 0.0)) {
    throw std::domain_error(std::string(stage) +
                            ": requires lambda > 0 (solve mu<0 by reflection)");
  }
  return lam;
}

// h' jumps at the kink; quadrature on the backlog side must see the left
// limit at y = a (the point itself has measure zero).
double hprime_left_at(const HoldingCost& holding, double a, double y) {
  return holding.hprime(
      y == a ? std::nextafter(a, -std::numeric_limits<double>::infinity())
             : y);
}

}  // namespace

namespace detail {

// W(x) = int_{-inf}^x h'(y) e^{lambda (y-x)} dy, by leftward truncation.
// Every exponent is <= 0, so this is the stable route to g far left of a,
// where the kink-anchored integral would amplify quadrature error by
// e^{lambda (a-x)}.
double tail_transform(const ProblemSpec& spec, double x, double quad_tol) {
  const double lam = spec.lambda();
  // y <= x < a throughout: no kink in range.
  auto integrand = [&](double y) {
    return spec.holding.hprime(y) * std::exp(lam * (y - x));
  };
  double total = 0.0;
  double near = x;
  double span = 1.0;
  for (int j = 0; j < 64; ++j) {
    const double far = x - span;
    double chunk;
    try {
      chunk = adaptive_simpson(integrand, far, near, 0.125 * quad_tol);
    } catch (const NumericError& e) {
      throw NumericError("tail_transform",
                         "left tail chunk not integrable",
                         e.achieved_bound());
    }
    total += chunk;
    if (std::abs(chunk) < quad_tol) return total;
    near = far;
    span *= 2.0;
  }
  throw NumericError("tail_transform",
                     "left tail of h' e^{lambda(y-x)} does not converge",
                     std::abs(total));
}

}  // namespace detail

// Anchored form left of the switch; far left the tail form
// F1 = (B - Bbar) - e^{lambda (x-a)} W(x)/mu avoids the e^{lambda (a-x)}
// error amplification of the anchored integral.
inline constexpr double kTailSwitch = 5.0;

double eval_F1(const ProblemSpec& spec, double B, double x, double quad_tol) {
  const double lam = require_positive_lambda(spec, "eval_F1");
  const double a = spec.holding.minimizer();
  if (x == a) return B;
  // Right of a the integrand grows like e^{lambda (x-a)}; far past the root
  // the value is a huge negative number whose sign is all callers use.
  if (lam * (x - a) > 600.0) {
    return -std::numeric_limits<double>::infinity();
  }
  if (lam * (a - x) > kTailSwitch) {
    const double bbar = compute_Bbar(spec, std::min(quad_tol, 1e-13));
    const double w = detail::tail_transform(spec, x, quad_tol);
    return (B - bbar) - std::exp(lam * (x - a)) * w / spec.mu;
  }
  double integral;
  if (x < a) {
    auto integrand = [&](double y) {
      return hprime_left_at(spec.holding, a, y) * std::exp(lam * (y - a));
    };
    integral = adaptive_simpson(integrand, a, x, quad_tol);
  } else {
    auto integrand = [&](double y) {
      return spec.holding.hprime(y) * std::exp(lam * (y - a));
    };
    integral = adaptive_simpson(integrand, a, x, quad_tol);
  }
  return B - integral / spec.mu;
}

// g(x) = A - h(x)/mu - F1(B,x) e^{-lambda (x-a)}, obtained from (g1) by
// integrating the h-term by parts. For x >= a the exponential is folded into
// the integrand so every exponent stays <= 0; for x < a the F1 integrand has
// exponents <= 0 and the single outer factor e^{lambda (a-x)} is capped.
double eval_g(const GCurve& curve, double x) {
  const ProblemSpec& spec = *curve.spec;
  const double lam = require_positive_lambda(spec, "eval_g");
  const double mu = spec.mu;
  const double a = spec.holding.minimizer();
  const double base = curve.A - spec.holding.h(x) / mu;
  if (x >= a) {
    auto integrand = [&](double y) {
      return spec.holding.hprime(y) * std::exp(lam * (y - x));
    };
    const double integral =
        x == a ? 0.0 : adaptive_simpson(integrand, a, x, curve.quad_tol);
    return base - curve.B * std::exp(-lam * (x - a)) + integral / mu;
  }
  const double w = lam * (a - x);
  if (w > kTailSwitch) {
    const double bbar = compute_Bbar(spec, std::min(curve.quad_tol, 1e-13));
    const double wtail = detail::tail_transform(spec, x, curve.quad_tol);
    const double diff = curve.B - bbar;
    double term;
    if (w > 690.0) {
      term = diff > 0 ? kGCap : (diff < 0 ? -kGCap : 0.0);
    } else {
      term = std::clamp(diff * std::exp(w), -kGCap, kGCap);
    }
    return std::clamp(base - term + wtail / spec.mu, -kGCap, kGCap);
  }
  const double f1 = eval_F1(spec, curve.B, x, curve.quad_tol);
  const double term = std::clamp(f1 * std::exp(w), -kGCap, kGCap);
  return std::clamp(base - term, -kGCap, kGCap);
}

double eval_g_prime(const GCurve& curve, double x) {
  const ProblemSpec& spec = *curve.spec;
  const double lam = require_positive_lambda(spec, "eval_g_prime");
  const double a = spec.holding.minimizer();
  if (x >= a) {
    auto integrand = [&](double y) {
      return spec.holding.hprime(y) * std::exp(lam * (y - x));
    };
    const double integral =
        x == a ? 0.0 : adaptive_simpson(integrand, a, x, curve.quad_tol);
    return lam *
           (curve.B * std::exp(-lam * (x - a)) - integral / spec.mu);
  }
  const double w = lam * (a - x);
  if (w > kTailSwitch) {
    const double bbar = compute_Bbar(spec, std::min(curve.quad_tol, 1e-13));
    const double wtail = detail::tail_transform(spec, x, curve.quad_tol);
    const double diff = curve.B - bbar;
    double term;
    if (w > 690.0) {
      term = diff > 0 ? kGCap : (diff < 0 ? -kGCap : 0.0);
    } else {
      term = std::clamp(diff * std::exp(w), -kGCap, kGCap);
    }
    return std::clamp(lam * (term - wtail / spec.mu), -kGCap, kGCap);
  }
  const double f1 = eval_F1(spec, curve.B, x, curve.quad_tol);
  return std::clamp(lam * f1 * std::exp(w), -kGCap, kGCap);
}

double compute_Bbar(const ProblemSpec& spec, double quad_tol) {
  const double lam = require_positive_lambda(spec, "compute_Bbar");
  const double a = spec.holding.minimizer();
  auto integrand = [&](double y) {
    return hprime_left_at(spec.holding, a, y) * std::exp(lam * (y - a));
  };
  double total = 0.0;
  double near = a;
  double span = 1.0;
  for (int j = 0; j < 64; ++j) {
    const double far = a - span;
    double chunk;
    try {
      chunk = adaptive_simpson(integrand, far, near, 0.125 * quad_tol);
    } catch (const NumericError& e) {
      throw NumericError("compute_Bbar",
                         "left tail chunk not integrable near y=a-" +
                             std::to_string(span),
                         e.achieved_bound());
    }
    total += chunk;
    if (std::abs(chunk) < quad_tol) {
      return -total / spec.mu;
    }
    near = far;
    span *= 2.0;
  }
  throw NumericError("compute_Bbar",
                     "left tail of h' e^{lambda(y-a)} does not converge "
                     "(h' tail is not integrable against the kernel)",
                     std::abs(total));
}

double compute_Bbar1(const ProblemSpec& spec, double quad_tol) {
  const double lam = require_positive_lambda(spec, "compute_Bbar1");
  const double a = spec.holding.minimizer();
  if (a < 0.0) {
    throw std::domain_error("compute_Bbar1: requires minimizer a >= 0");
  }
  if (a == 0.0) return 0.0;
  auto integrand = [&](double y) {
    return hprime_left_at(spec.holding, a, y) * std::exp(lam * (y - a));
  };
  return -adaptive_simpson(integrand, 0.0, a, quad_tol) / spec.mu;
}

namespace detail {

ExtremaPair find_extrema_with(const ProblemSpec& spec, double B, bool nonneg,
                              double Bbar_or_Bbar1, double quad_tol,
                              const RootOptions& ropt) {
  auto f1 = [&](double x) { return eval_F1(spec, B, x, quad_tol); };
  return extrema_from_f1(f1, spec.holding.minimizer(), B, nonneg,
                         Bbar_or_Bbar1, ropt);
}

}  // namespace detail

ExtremaPair find_extrema(const ProblemSpec& spec, double B, bool nonneg,
                         double quad_tol, const RootOptions& ropt) {
  const double bound =
      nonneg ? compute_Bbar1(spec, quad_tol) : compute_Bbar(spec, quad_tol);
  return detail::find_extrema_with(spec, B, nonneg, bound, quad_tol, ropt);
}

}  // namespace bandopt
