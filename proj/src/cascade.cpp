#include "cascade.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <tuple>

#include "bandopt/errors.hpp"
#include "bandopt/quadrature.hpp"
#include "extrema_impl.hpp"

namespace bandopt::detail {

namespace {
constexpr double kEndpointOffset = 1e-9;
}

Cascade::Cascade(const ProblemSpec& spec, bool nonneg,
                 const SolverOptions& opt)
    : spec_(spec), nonneg_(nonneg), opt_(opt), ev_(spec, opt.tol_quad) {
  ropt_.x_tol = opt.tol_root;
  ropt_.max_bracket_expansions = opt.max_bracket_expansions;
}

double Cascade::Bbar() const {
  if (!bbar_) bbar_ = compute_Bbar(spec_, opt_.tol_quad);
  return *bbar_;
}

double Cascade::Bbar1() const {
  if (!bbar1_) bbar1_ = compute_Bbar1(spec_, opt_.tol_quad);
  return *bbar1_;
}

ExtremaPair Cascade::extrema(double B) const {
  auto f1 = [&](double x) { return ev_.F1(B, x); };
  const double bound = nonneg_ ? Bbar1() : Bbar();
  return extrema_from_f1(f1, spec_.holding.minimizer(), B, nonneg_, bound,
                         ropt_);
}

double Cascade::g_at_x1(double A, double B, const ExtremaPair& ex) const {
  // At an interior extremum F1 vanishes, so g(x1) = A - h(x1)/mu exactly;
  // at a clamped x1 = 0 the curve must be evaluated.
  if (ex.x1_clamped_at_zero) return ev_.g(A, B, 0.0);
  return A - spec_.holding.h(ex.x1) / spec_.mu;
}

double Cascade::gtilde(double B) const {
  const ExtremaPair ex = extrema(B);
  const double g2 = -spec_.holding.h(ex.x2) / spec_.mu;
  const double g1 = g_at_x1(0.0, B, ex);
  return g2 - g1;
}

double Cascade::shrink_lo(const std::function<double(double)>& f,
                          double endpoint, double span, bool want_negative,
                          const char* stage) const {
  double off = kEndpointOffset * span;
  for (int i = 0; i < 40; ++i) {
    const double x = endpoint + off;
    const double fx = f(x);
    if ((fx < 0.0) == want_negative || fx == 0.0) return x;
    off *= 0.125;
  }
  throw NumericError(stage, "no feasible bracket endpoint above lower limit",
                     off);
}

double Cascade::shrink_hi_toward(const std::function<double(double)>& f,
                                 double endpoint, double span,
                                 bool want_negative,
                                 const char* stage) const {
  double off = kEndpointOffset * span;
  for (int i = 0; i < 40; ++i) {
    const double x = endpoint - off;
    const double fx = f(x);
    if ((fx < 0.0) == want_negative || fx == 0.0) return x;
    off *= 0.125;
  }
  throw NumericError(stage, "no feasible bracket endpoint below upper limit",
                     off);
}

double Cascade::expand_hi(const std::function<double(double)>& f,
                          double start, bool want_negative,
                          const char* stage) const {
  double step = 1.0;
  for (int i = 0; i < opt_.max_bracket_expansions; ++i) {
    const double x = start + step;
    const double fx = f(x);
    if ((fx < 0.0) == want_negative || fx == 0.0) return x;
    step *= 2.0;
  }
  throw NumericError(stage, "bracket expansion exceeded max expansions", step);
}

double Cascade::B1() const {
  if (b1_) return *b1_;
  const double target = spec_.k + spec_.ell;
  std::function<double(double)> f = [&](double B) {
    return gtilde(B) - target;
  };
  double lo, hi;
  if (nonneg_) {
    lo = shrink_lo(f, 0.0, 1.0, true, "solve_B1");
    hi = expand_hi(f, lo, false, "solve_B1");
  } else {
    const double bb = Bbar();
    lo = shrink_lo(f, 0.0, bb, true, "solve_B1");
    hi = shrink_hi_toward(f, bb, bb, false, "solve_B1");
  }
  b1_ = bisect(f, lo, hi, ropt_, "solve_B1");
  return *b1_;
}

Cascade::BContext Cascade::b_context(double B) const {
  BContext c;
  c.B = B;
  c.ex = extrema(B);
  c.a_lower = spec_.holding.h(c.ex.x2) / spec_.mu + spec_.ell;
  c.a_upper = -spec_.k - g_at_x1(0.0, B, c.ex);
  return c;
}

std::pair<double, double> Cascade::A_bounds(double B) const {
  const BContext c = b_context(B);
  return {c.a_lower, c.a_upper};
}

std::pair<double, double> Cascade::find_Uu_at(double A,
                                              const BContext& c) const {
  const double eps =
      1e-9 * std::max(1.0, std::abs(c.a_lower) + std::abs(c.a_upper));
  if (A <= c.a_lower) {
    if (A >= c.a_lower - eps) return {c.ex.x2, c.ex.x2};  // degenerate limit
    throw std::domain_error("find_Uu: A below A_lower(B)");
  }
  if (A > c.a_upper + eps) {
    throw std::domain_error("find_Uu: A above A_upper(B)");
  }
  const double B = c.B;
  auto gml = [&](double x) { return ev_.g(A, B, x) - spec_.ell; };
  const double g1 = g_at_x1(A, B, c.ex) - spec_.ell;  // <= -(k+ell) < 0
  const double g2 = A - c.a_lower;                    // g(x2) - ell > 0
  const double U = bisect(gml, c.ex.x1, c.ex.x2, g1, g2, ropt_, "find_Uu.U");
  const double hi = expand_bracket(gml, c.ex.x2, g2, +1, ropt_, "find_Uu.u");
  const double u = bisect(gml, c.ex.x2, hi, g2, gml(hi), ropt_, "find_Uu.u");
  return {U, u};
}

std::pair<double, double> Cascade::find_Uu(double A, double B) const {
  return find_Uu_at(A, b_context(B));
}

double Cascade::Lambda2_at(double A, const BContext& c) const {
  const auto [U, u] = find_Uu_at(A, c);
  if (U == u) return 0.0;
  return ev_.integral_g_plus(A, c.B, U, u, -spec_.ell);
}

double Cascade::Lambda2(double A, double B) const {
  return Lambda2_at(A, b_context(B));
}

double Cascade::B2() const {
  if (b2_) return *b2_;
  const double b1 = B1();
  std::function<double(double)> f = [&](double B) {
    const BContext c = b_context(B);
    return Lambda2_at(c.a_upper, c) - spec_.L;
  };
  double lo, hi;
  if (nonneg_) {
    lo = shrink_lo(f, b1, 1.0, true, "solve_B2");
    hi = expand_hi(f, lo, false, "solve_B2");
  } else {
    const double bb = Bbar();
    lo = shrink_lo(f, b1, bb - b1, true, "solve_B2");
    hi = shrink_hi_toward(f, bb, bb - b1, false, "solve_B2");
  }
  b2_ = bisect(f, lo, hi, ropt_, "solve_B2");
  return *b2_;
}

double Cascade::solve_Astar_at(const BContext& c) const {
  auto r = [&](double A) { return Lambda2_at(A, c) - spec_.L; };
  const double r_upper = r(c.a_upper);
  if (r_upper <= 0.0) {
    if (r_upper > -1e-9 * std::max(1.0, spec_.L)) return c.a_upper;  // B == B2
    throw std::domain_error("solve_Astar: B below B2 (Lambda2(A_upper) < L)");
  }
  std::function<double(double)> rf = r;
  const double lo =
      shrink_lo(rf, c.a_lower, c.a_upper - c.a_lower, true, "solve_Astar");
  return bisect(r, lo, c.a_upper, r(lo), r_upper, ropt_, "solve_Astar");
}

double Cascade::solve_Astar(double B) const {
  return solve_Astar_at(b_context(B));
}

std::pair<double, double> Cascade::find_dD_at(double A,
                                              const BContext& c) const {
  const double B = c.B;
  const ExtremaPair& ex = c.ex;
  const double g1k = g_at_x1(A, B, ex) + spec_.k;
  if (!(g1k < 0.0)) {
    throw std::domain_error("find_dD: requires g(x1(B)) < -k");
  }
  auto gpk = [&](double x) { return ev_.g(A, B, x) + spec_.k; };
  const double g2k =
      A - spec_.holding.h(ex.x2) / spec_.mu + spec_.k;  // g(x2) + k > 0
  const double D = bisect(gpk, ex.x1, ex.x2, g1k, g2k, ropt_, "find_dD.D");
  double d;
  if (nonneg_) {
    if (ex.x1_clamped_at_zero || ex.x1 <= 0.0) {
      d = 0.0;
    } else {
      const double g0k = ev_.g(A, B, 0.0) + spec_.k;
      d = g0k <= 0.0
              ? 0.0
              : bisect(gpk, 0.0, ex.x1, g0k, g1k, ropt_, "find_dD.d");
    }
  } else {
    const double lo = expand_bracket(gpk, ex.x1, g1k, -1, ropt_, "find_dD.d");
    d = bisect(gpk, lo, ex.x1, gpk(lo), g1k, ropt_, "find_dD.d");
  }
  return {d, D};
}

std::pair<double, double> Cascade::find_dD(double A, double B) const {
  return find_dD_at(A, b_context(B));
}

double Cascade::Lambda1_of_Astar(const BContext& c) const {
  const double A = solve_Astar_at(c);
  const auto [d, D] = find_dD_at(A, c);
  if (d == D) return 0.0;
  return ev_.integral_g_plus(A, c.B, d, D, spec_.k);
}

double Cascade::Lambda1(double A, double B) const {
  const auto [d, D] = find_dD(A, B);
  if (d == D) return 0.0;
  return ev_.integral_g_plus(A, B, d, D, spec_.k);
}

Solution Cascade::solve_impulse() const {
  const double b1 = B1();
  const double b2 = B2();
  std::function<double(double)> phi = [&](double B) {
    return Lambda1_of_Astar(b_context(B)) + spec_.K;
  };
  double lo, hi;
  if (nonneg_) {
    lo = shrink_lo(phi, b2, 1.0, false, "solve_impulse.Bstar");
    hi = expand_hi(phi, lo, true, "solve_impulse.Bstar");
  } else {
    const double bb = Bbar();
    lo = shrink_lo(phi, b2, bb - b2, false, "solve_impulse.Bstar");
    hi = shrink_hi_toward(phi, bb, bb - b2, true, "solve_impulse.Bstar");
  }
  const double Bs = bisect(phi, lo, hi, ropt_, "solve_impulse.Bstar");
  const BContext c = b_context(Bs);
  const double As = solve_Astar_at(c);
  const auto [U, u] = find_Uu_at(As, c);
  const auto [d, D] = find_dD_at(As, c);
  const ExtremaPair& ex = c.ex;

  Solution sol;
  sol.policy.mode =
      nonneg_ ? ControlMode::nonneg_impulse : ControlMode::impulse;
  sol.policy.d = d;
  sol.policy.D = D;
  sol.policy.U = U;
  sol.policy.u = u;
  if (nonneg_ && d == 0.0) {
    sol.policy.alpha = std::max(0.0, -(spec_.k + ev_.g(As, Bs, 0.0)));
  }
  sol.gamma = spec_.mu * As;
  sol.A_star = As;
  sol.B_star = Bs;
  sol.x1 = ex.x1;
  sol.x2 = ex.x2;
  sol.B_bar = nonneg_ ? Bbar1() : Bbar();
  sol.B1 = b1;
  sol.B2 = b2;

  const double alpha = sol.policy.alpha;
  sol.residuals["g_d"] = std::abs(ev_.g(As, Bs, d) + spec_.k + alpha);
  sol.residuals["g_D"] = std::abs(ev_.g(As, Bs, D) + spec_.k);
  sol.residuals["g_U"] = std::abs(ev_.g(As, Bs, U) - spec_.ell);
  sol.residuals["g_u"] = std::abs(ev_.g(As, Bs, u) - spec_.ell);
  sol.residuals["int_dD"] =
      std::abs(ev_.integral_g_plus(As, Bs, d, D, spec_.k) + spec_.K);
  sol.residuals["int_Uu"] =
      std::abs(ev_.integral_g_plus(As, Bs, U, u, -spec_.ell) - spec_.L);
  if (nonneg_) {
    sol.residuals["alpha_comp"] = std::abs(alpha * d);
  }

  const bool ordered = (nonneg_ ? d >= 0.0 && d <= ex.x1 : d < ex.x1) &&
                       ex.x1 <= D && D < U && U < ex.x2 && ex.x2 < u;
  if (!ordered) {
    throw NumericError("solve_impulse.ordering",
                       "band ordering d < x1 < D < U < x2 < u violated", 0.0);
  }
  return sol;
}

Solution Cascade::solve_singular() const {
  double b1 = B1();
  ExtremaPair ex = extrema(b1);
  auto cross_check = [&](const ExtremaPair& e) {
    const double from_x2 = spec_.holding.h(e.x2) / spec_.mu + spec_.ell;
    const double from_x1 = spec_.holding.h(e.x1) / spec_.mu - spec_.k;
    return std::make_pair(from_x2, std::abs(from_x2 - from_x1));
  };
  auto [As, mismatch] = cross_check(ex);
  if (mismatch > 1e-8) {
    // The two A expressions agree iff gtilde(B1) = k + ell exactly; refine
    // the B1 root at a tighter tolerance and retry.
    RootOptions tight = ropt_;
    tight.x_tol = 1e-15;
    const double target = spec_.k + spec_.ell;
    auto f = [&](double B) { return gtilde(B) - target; };
    const double w = std::max(1e-10, 1e3 * ropt_.x_tol);
    b1 = bisect(f, b1 - w, b1 + w, tight, "solve_singular.refine");
    ex = extrema(b1);
    std::tie(As, mismatch) = cross_check(ex);
    if (mismatch > 1e-8) {
      throw NumericError("solve_singular",
                         "A* branch cross-check failed after refinement",
                         mismatch);
    }
  }

  Solution sol;
  sol.policy.mode = ControlMode::singular;
  sol.policy.d = ex.x1;
  sol.policy.D = ex.x1;
  sol.policy.U = ex.x2;
  sol.policy.u = ex.x2;
  sol.gamma = spec_.mu * As;
  sol.A_star = As;
  sol.B_star = b1;
  sol.x1 = ex.x1;
  sol.x2 = ex.x2;
  sol.B_bar = Bbar();
  sol.B1 = b1;
  sol.B2 = std::numeric_limits<double>::quiet_NaN();
  sol.residuals["g_d"] = std::abs(ev_.g(As, b1, ex.x1) + spec_.k);
  sol.residuals["g_u"] = std::abs(ev_.g(As, b1, ex.x2) - spec_.ell);
  sol.residuals["gp_d"] = std::abs(ev_.g_prime(b1, ex.x1));
  sol.residuals["gp_u"] = std::abs(ev_.g_prime(b1, ex.x2));
  return sol;
}

Solution reflect_back(const Solution& m) {
  Solution r = m;
  r.reflected = true;
  r.policy.d = -m.policy.u;
  r.policy.D = -m.policy.U;
  r.policy.U = -m.policy.D;
  r.policy.u = -m.policy.d;
  r.x1 = -m.x2;
  r.x2 = -m.x1;
  auto swap_keys = [&](const char* ka, const char* kb) {
    auto ia = m.residuals.find(ka);
    auto ib = m.residuals.find(kb);
    if (ia != m.residuals.end() && ib != m.residuals.end()) {
      r.residuals[ka] = ib->second;
      r.residuals[kb] = ia->second;
    }
  };
  swap_keys("g_d", "g_u");
  swap_keys("g_D", "g_U");
  swap_keys("int_dD", "int_Uu");
  swap_keys("gp_d", "gp_u");
  return r;
}

}  // namespace bandopt::detail
