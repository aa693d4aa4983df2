#include <doctest.h>

#include <cmath>

#include "bandopt/evaluator.hpp"
#include "bandopt/impulse_solver.hpp"
#include "bandopt/singular_solver.hpp"
#include "closed_forms.hpp"

using namespace bandopt;

namespace {

// Purely formula-level instance: h == 0, lambda = 1, designed so gamma has
// a hand integral. Deliberately violates the sign conditions on h'; the
// evaluator is linear algebra and must accept it.
ProblemSpec zero_holding_spec() {
  ProblemSpec s;
  s.mu = 1;
  s.sigma2 = 2;
  s.K = 1;
  s.k = 0;
  s.L = 1;
  s.ell = 0;
  s.holding = HoldingCost::make_custom(
      0.0, [](double) { return 0.0; }, [](double) { return 0.0; });
  s.mode = ControlMode::impulse;
  return s;
}

BandPolicy impulse_band(double d, double D, double U, double u) {
  return BandPolicy{d, D, U, u, ControlMode::impulse, 0.0};
}

BandPolicy singular_band(double d, double u) {
  return BandPolicy{d, d, u, u, ControlMode::singular, 0.0};
}

}  // namespace

TEST_CASE("hand-integral instance: h == 0, band (-2,-1,1,2), K = L = 1") {
  const ProblemSpec s = zero_holding_spec();
  const Evaluation ev = evaluate_impulse(s, impulse_band(-2, -1, 1, 2));

  const double e1 = std::exp(1.0), e2 = std::exp(2.0);
  const double a1 = e2 - e1;
  const double a2 = 1 / e1 - 1 / e2;
  const double b1 = e2 - e1 - 1;
  const double b2 = 1 + 1 / e2 - 1 / e1;
  const double gamma = (a1 + a2) / (a2 * b1 + a1 * b2);

  CHECK(ev.gamma == doctest::Approx(gamma).epsilon(1e-9));
  CHECK(ev.gamma == doctest::Approx(1.10479139298).epsilon(1e-9));
  CHECK(ev.coefficients.at("a1") == doctest::Approx(a1).epsilon(1e-10));
  CHECK(ev.coefficients.at("a2") == doctest::Approx(a2).epsilon(1e-10));
  CHECK(ev.coefficients.at("b1") == doctest::Approx(b1).epsilon(1e-10));
  CHECK(ev.coefficients.at("b2") == doctest::Approx(b2).epsilon(1e-10));
  CHECK(std::abs(ev.coefficients.at("c1")) <= 1e-12);
  CHECK(std::abs(ev.coefficients.at("c2")) <= 1e-12);
}

TEST_CASE("singular evaluation reproduces the closed-form optimum") {
  const ProblemSpec s = oracle::r1_singular();
  const double d = oracle::R1::d_singular();
  const double u = oracle::R1::u_singular();
  const Evaluation ev = evaluate_singular(s, singular_band(d, u));
  CHECK(ev.gamma ==
        doctest::Approx(oracle::R1::gamma_singular()).epsilon(1e-6));
  // imposed boundary conditions
  CHECK(std::abs(ev.Vprime(d) + s.k) <= 1e-8);
  CHECK(std::abs(ev.Vprime(u) - s.ell) <= 1e-8);
}

TEST_CASE("widening the optimal singular band strictly increases gamma") {
  const ProblemSpec s = oracle::r1_singular();
  const double d = oracle::R1::d_singular();
  const double u = oracle::R1::u_singular();
  const double g0 = evaluate_singular(s, singular_band(d, u)).gamma;
  const double g1 =
      evaluate_singular(s, singular_band(d - 0.5, u + 0.5)).gamma;
  CHECK(g1 > g0);
}

TEST_CASE("doubling fixed costs strictly increases gamma for a fixed band") {
  ProblemSpec s = oracle::r1_impulse();
  const BandPolicy band = impulse_band(-3, -1.5, -0.4, 2);
  const double g0 = evaluate_impulse(s, band).gamma;
  s.K *= 2;
  s.L *= 2;
  CHECK(evaluate_impulse(s, band).gamma > g0);
}

TEST_CASE("evaluator agrees with the solver at the optimum") {
  const ProblemSpec specs[] = {oracle::r1_impulse(), oracle::quad_impulse(),
                               oracle::sl1_impulse()};
  for (const auto& s : specs) {
    const Solution sol = solve_impulse(s);
    const Evaluation ev = evaluate_impulse(s, sol.policy);
    CHECK(std::abs(ev.gamma - sol.gamma) <= 1e-6 * std::abs(sol.gamma));
  }
}

TEST_CASE("gamma is independent of the anchor m") {
  const ProblemSpec s = oracle::r1_impulse();
  const BandPolicy band = impulse_band(-3.9, -1.55, -0.38, 2.06);
  EvaluatorOptions mid;
  mid.anchor = 0.5 * (band.d + band.u);
  const Evaluation ev_a = evaluate_impulse(s, band);
  const Evaluation ev_m = evaluate_impulse(s, band, mid);
  CHECK(std::abs(ev_a.gamma - ev_m.gamma) <= 1e-9 * std::abs(ev_a.gamma));

  // V is unique up to a constant: the difference must be flat
  const double c0 = ev_a.V(band.d) - ev_m.V(band.d);
  for (double x = band.d; x <= band.u; x += (band.u - band.d) / 17) {
    CHECK(std::abs((ev_a.V(x) - ev_m.V(x)) - c0) <= 1e-8);
  }
}

TEST_CASE("Poisson residual vanishes on the band") {
  const ProblemSpec s = oracle::quad_impulse();
  const Solution sol = solve_impulse(s);
  const Evaluation ev = evaluate_impulse(s, sol.policy);
  const double d = sol.policy.d, u = sol.policy.u;
  const double delta = 5e-4;
  for (int i = 0; i < 200; ++i) {
    const double x = d + (u - d) * (i + 0.5) / 200;
    const double vpp = (ev.Vprime(x + delta) - ev.Vprime(x - delta)) /
                       (2 * delta);
    const double resid = 0.5 * s.sigma2 * vpp + s.mu * ev.Vprime(x) +
                         s.holding.h(x) - ev.gamma;
    CHECK(std::abs(resid) <= 1e-6);
  }
}

TEST_CASE("impulse boundary conditions hold for any band") {
  const ProblemSpec s = oracle::r1_impulse();
  const BandPolicy bands[] = {impulse_band(-3, -1.5, -0.4, 2),
                              impulse_band(-2, -1, 0.5, 1.2)};
  for (const auto& band : bands) {
    const Evaluation ev = evaluate_impulse(s, band);
    CHECK(std::abs((ev.V(band.d) - ev.V(band.D)) -
                   (s.K + s.k * (band.D - band.d))) <= 1e-8);
    CHECK(std::abs((ev.V(band.u) - ev.V(band.U)) -
                   (s.L + s.ell * (band.u - band.U))) <= 1e-8);
  }
}

TEST_CASE("extended value function") {
  const ProblemSpec s = oracle::r1_impulse();
  const Solution sol = solve_impulse(s);
  const Evaluation ev = evaluate_impulse(s, sol.policy);
  auto f = extend_value_function(s, sol.policy, ev);
  const double d = sol.policy.d, u = sol.policy.u;

  SUBCASE("continuous at the band edges") {
    CHECK(std::abs(f(d - 1e-12) - f(d)) <= 1e-10);
    CHECK(std::abs(f(u + 1e-12) - f(u)) <= 1e-10);
  }
  SUBCASE("linear with slope -k below d") {
    const double slope = (f(d - 1.0) - f(d - 2.0)) / 1.0;
    CHECK(slope == doctest::Approx(-s.k).epsilon(1e-12));
    const double slope_up = (f(u + 2.0) - f(u + 1.0)) / 1.0;
    CHECK(slope_up == doctest::Approx(s.ell).epsilon(1e-12));
  }
  SUBCASE("C1 at the optimum") {
    CHECK(std::abs(ev.Vprime(d) - (-s.k)) <= 1e-8);
    CHECK(std::abs(ev.Vprime(u) - s.ell) <= 1e-8);
  }
}

TEST_CASE("evaluator works for mu < 0 via its own formulas") {
  // mirror of R1 singular: mu = -1, same symmetric h, swapped costs
  ProblemSpec s = oracle::r1_singular();
  s.mu = -1;
  const double d = -oracle::R1::u_singular();
  const double u = -oracle::R1::d_singular();
  const Evaluation ev = evaluate_singular(s, singular_band(d, u));
  CHECK(ev.gamma ==
        doctest::Approx(oracle::R1::gamma_singular()).epsilon(1e-6));
}

TEST_CASE("evaluator rejects bad band orderings") {
  const ProblemSpec s = oracle::r1_impulse();
  CHECK_THROWS_AS(evaluate_impulse(s, impulse_band(-1, -1.5, 0.4, 2)),
                  std::domain_error);
  CHECK_THROWS_AS(evaluate_singular(s, singular_band(2, -1)),
                  std::domain_error);
  ProblemSpec zero = s;
  zero.mu = 0;
  CHECK_THROWS_AS(evaluate_impulse(zero, impulse_band(-2, -1, 1, 2)),
                  UnsupportedError);
}
