#include "bandopt/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bandopt/quadrature.hpp"

namespace bandopt {

std::string to_string(ControlMode mode) {
  switch (mode) {
    case ControlMode::impulse:
      return "impulse";
    case ControlMode::singular:
      return "singular";
    case ControlMode::nonneg_impulse:
      return "nonneg";
  }
  return "?";
}

ProblemSpec reflect(const ProblemSpec& spec) {
  ProblemSpec r = spec;
  r.mu = -spec.mu;
  r.K = spec.L;
  r.k = spec.ell;
  r.L = spec.K;
  r.ell = spec.k;
  r.holding = spec.holding.reflected();
  return r;
}

bool ValidationReport::mentions(const std::string& needle) const {
  return std::any_of(issues.begin(), issues.end(), [&](const auto& i) {
    return i.invariant.find(needle) != std::string::npos ||
           i.detail.find(needle) != std::string::npos;
  });
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Estimates int |h'(y)| e^{lambda (y-a)} dy over the relevant tail by
// geometric truncation; reports divergence if increments do not fall
// below tail_tol.
void check_tail(const ProblemSpec& spec, const ValidationOptions& opt,
                ValidationReport& rep) {
  const double lam = spec.lambda();
  const double a = spec.holding.minimizer();
  const int dir = lam > 0 ? -1 : +1;  // lambda>0: left tail; lambda<0: right
  const double a_side =
      std::nextafter(a, dir * std::numeric_limits<double>::infinity());
  auto integrand = [&](double y) {
    return std::abs(spec.holding.hprime(y == a ? a_side : y)) *
           std::exp(lam * (y - a));
  };
  double total = 0.0;
  double near = a, far = a + dir * 1.0;
  for (int j = 0; j < 60; ++j) {
    double chunk;
    try {
      chunk = std::abs(adaptive_simpson(integrand, std::min(near, far),
                                        std::max(near, far), opt.tail_tol));
    } catch (const NumericError&) {
      rep.issues.push_back({"tail integral diverges",
                            "non-convergent chunk near y=" + fmt(far)});
      return;
    }
    total += chunk;
    if (chunk < opt.tail_tol) return;  // converged
    near = far;
    far = a + dir * std::abs(far - a) * 2.0;
  }
  rep.issues.push_back(
      {"tail integral diverges",
       "estimate " + fmt(total) + " still growing at |y-a|=" +
           fmt(std::abs(near - a))});
}

}  // namespace

ValidationReport validate_spec(const ProblemSpec& spec,
                               const ValidationOptions& opt) {
  ValidationReport rep;
  if (!(spec.sigma2 > 0.0)) {
    rep.issues.push_back({"sigma2 must be > 0", "sigma2=" + fmt(spec.sigma2)});
  }
  if (!(spec.k > 0.0)) {
    rep.issues.push_back({"k must be > 0", "k=" + fmt(spec.k)});
  }
  if (!(spec.ell > 0.0)) {
    rep.issues.push_back({"ell must be > 0", "ell=" + fmt(spec.ell)});
  }
  if (spec.K < 0.0) {
    rep.issues.push_back({"K must be >= 0", "K=" + fmt(spec.K)});
  }
  if (spec.L < 0.0) {
    rep.issues.push_back({"L must be >= 0", "L=" + fmt(spec.L)});
  }
  if (spec.mu == 0.0 || !std::isfinite(spec.lambda()) ||
      spec.lambda() == 0.0) {
    rep.issues.push_back(
        {"lambda undefined",
         "zero drift is unsupported: lambda=2*mu/sigma2 requires mu != 0 "
         "(mu=" + fmt(spec.mu) + ")"});
  }
  switch (spec.mode) {
    case ControlMode::impulse:
      if (!(spec.K > 0.0) || !(spec.L > 0.0)) {
        rep.issues.push_back({"impulse mode requires K > 0 and L > 0",
                              "K=" + fmt(spec.K) + " L=" + fmt(spec.L)});
      }
      break;
    case ControlMode::singular:
      if (spec.K != 0.0 || spec.L != 0.0) {
        rep.issues.push_back({"singular mode requires K = 0 and L = 0",
                              "K=" + fmt(spec.K) + " L=" + fmt(spec.L)});
      }
      break;
    case ControlMode::nonneg_impulse:
      if (!(spec.K > 0.0) || !(spec.L > 0.0)) {
        rep.issues.push_back({"nonneg mode requires K > 0 and L > 0",
                              "K=" + fmt(spec.K) + " L=" + fmt(spec.L)});
      }
      if (spec.holding.minimizer() < 0.0) {
        rep.issues.push_back({"nonneg mode requires minimizer a >= 0",
                              "a=" + fmt(spec.holding.minimizer())});
      }
      if (!(spec.mu > 0.0)) {
        rep.issues.push_back(
            {"nonneg mode requires mu > 0",
             "mu=" + fmt(spec.mu) + "; reflection is meaningless on [0,inf)"});
      }
      break;
  }

  // Holding cost shape conditions: h(a)=0, sign of h', convexity.
  const double a = spec.holding.minimizer();
  const double ha = spec.holding.h(a);
  if (std::abs(ha) > 1e-9) {
    rep.issues.push_back({"h(a) must be 0", "h(a)=" + fmt(ha)});
  }
  const int n = std::max(opt.grid_points, 5);
  const double w = opt.grid_halfwidth;
  const double lo =
      spec.mode == ControlMode::nonneg_impulse ? std::max(0.0, a - w) : a - w;
  const double hi = a + w;
  double prev_hp = 0.0;
  bool have_prev = false;
  bool sign_reported = false, convex_reported = false, nonneg_reported = false;
  for (int i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * i / (n - 1);
    const double hx = spec.holding.h(x);
    const double hpx = spec.holding.hprime(x);
    if (hx < 0.0 && !nonneg_reported) {
      rep.issues.push_back({"h must be nonnegative",
                            "h(" + fmt(x) + ")=" + fmt(hx)});
      nonneg_reported = true;
    }
    if (!sign_reported) {
      if (x < a - 1e-12 && hpx >= 0.0) {
        rep.issues.push_back({"h' must be negative left of a",
                              "h'(" + fmt(x) + ")=" + fmt(hpx)});
        sign_reported = true;
      } else if (x > a + 1e-12 && hpx <= 0.0) {
        rep.issues.push_back({"h' must be positive right of a",
                              "h'(" + fmt(x) + ")=" + fmt(hpx)});
        sign_reported = true;
      }
    }
    if (have_prev && hpx < prev_hp - 1e-9 && !convex_reported) {
      rep.issues.push_back(
          {"convexity violation",
           "h' decreasing near x=" + fmt(x) + " (" + fmt(prev_hp) + " -> " +
               fmt(hpx) + ")"});
      convex_reported = true;
    }
    prev_hp = hpx;
    have_prev = true;
  }

  if (spec.mu != 0.0 && std::isfinite(spec.lambda()) && spec.lambda() != 0.0) {
    check_tail(spec, opt, rep);
  }
  return rep;
}

}  // namespace bandopt
