#include <doctest.h>

#include <cmath>

#include "bandopt/impulse_solver.hpp"
#include "bandopt/nonneg_solver.hpp"
#include "closed_forms.hpp"

using namespace bandopt;

TEST_CASE("slack constraint reproduces the backlog solution") {
  // h = |x - 5|: the unconstrained band lies in (0, inf), so the
  // nonnegativity constraint is inactive and both solvers must agree.
  const Solution nn = solve_nonneg(oracle::nonneg_slack());
  ProblemSpec backlog = oracle::nonneg_slack();
  backlog.mode = ControlMode::impulse;
  const Solution bl = solve_impulse(backlog);

  CHECK(std::abs(nn.policy.d - bl.policy.d) <= 1e-6);
  CHECK(std::abs(nn.policy.D - bl.policy.D) <= 1e-6);
  CHECK(std::abs(nn.policy.U - bl.policy.U) <= 1e-6);
  CHECK(std::abs(nn.policy.u - bl.policy.u) <= 1e-6);
  CHECK(std::abs(nn.gamma - bl.gamma) <= 1e-6);
  CHECK(nn.policy.alpha == 0.0);
  CHECK(nn.policy.d > 0.0);
  // and equals the R1 solution shifted by 5
  CHECK(nn.policy.d ==
        doctest::Approx(oracle::R1::d_frozen + 5.0).epsilon(1e-7));
  CHECK(nn.gamma == doctest::Approx(oracle::R1::gamma_frozen).epsilon(1e-8));
}

TEST_CASE("binding constraint clamps the lower trigger at zero") {
  const ProblemSpec spec = oracle::nonneg_abs();
  const Solution s = solve_nonneg(spec);
  using NN = oracle::NonnegAbs;
  CHECK(s.policy.d == 0.0);
  CHECK(s.policy.alpha > 0.0);
  CHECK(s.policy.alpha * s.policy.d == 0.0);
  CHECK(s.B1 == doctest::Approx(NN::B1_frozen).epsilon(1e-8));
  CHECK(s.B2 == doctest::Approx(NN::B2_frozen).epsilon(1e-8));
  CHECK(s.B_star == doctest::Approx(NN::Bstar_frozen).epsilon(1e-7));
  CHECK(s.gamma == doctest::Approx(NN::gamma_frozen).epsilon(1e-8));
  CHECK(s.policy.D == doctest::Approx(NN::D_frozen).epsilon(1e-7));
  CHECK(s.policy.U == doctest::Approx(NN::U_frozen).epsilon(1e-7));
  CHECK(s.policy.u == doctest::Approx(NN::u_frozen).epsilon(1e-7));
  CHECK(s.policy.alpha == doctest::Approx(NN::alpha_frozen).epsilon(1e-7));

  SUBCASE("multiplier-adjusted pasting residuals") {
    CHECK(s.residuals.at("g_d") <= 1e-8);
    CHECK(s.residuals.at("g_D") <= 1e-8);
    CHECK(s.residuals.at("g_U") <= 1e-8);
    CHECK(s.residuals.at("g_u") <= 1e-8);
    CHECK(s.residuals.at("int_dD") <= 1e-6);
    CHECK(s.residuals.at("int_Uu") <= 1e-6);
    CHECK(s.residuals.at("alpha_comp") == 0.0);
  }
  SUBCASE("ordering 0 <= d < D < U < u with U < x2 < u") {
    CHECK(s.policy.d < s.policy.D);
    CHECK(s.policy.D < s.policy.U);
    CHECK(s.policy.U < s.x2);
    CHECK(s.x2 < s.policy.u);
  }
}

TEST_CASE("interior minimizer with binding constraint") {
  // h = |x - 1|: backlog optimum has d < 0, so the clamp at 0 engages.
  ProblemSpec spec = oracle::r1_impulse();
  spec.holding = make_linear_holding(1, 1, 1);
  spec.mode = ControlMode::nonneg_impulse;
  const Solution s = solve_nonneg(spec);
  CHECK(s.policy.d == 0.0);
  CHECK(s.policy.alpha >= 0.0);
  CHECK(s.policy.alpha * s.policy.d == 0.0);
  CHECK(s.residuals.at("g_d") <= 1e-8);
  CHECK(s.policy.D > 0.0);
  CHECK(s.gamma > 0.0);
}

TEST_CASE("gtilde is increasing and unbounded in nonneg mode") {
  const ProblemSpec spec = oracle::nonneg_abs();
  double prev = 0.0;
  for (double B : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 50.0}) {
    const double g = gtilde(spec, B);
    CHECK(g > prev);
    prev = g;
  }
  CHECK(prev > 46.0);  // gtilde(B) = B - log(1+B) here
}

TEST_CASE("nonneg rejections") {
  ProblemSpec s = oracle::nonneg_abs();
  s.mu = -1;
  CHECK_THROWS_AS(solve_nonneg(s), UnsupportedError);
  s.mu = 0;
  CHECK_THROWS_AS(solve_nonneg(s), UnsupportedError);
  ProblemSpec neg_a = oracle::nonneg_abs();
  neg_a.holding = make_linear_holding(1, 1, -1);
  CHECK_THROWS_AS(solve_nonneg(neg_a), std::domain_error);
}
