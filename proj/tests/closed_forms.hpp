#pragma once

// Test-only closed forms and hand-solved reference values for the standard
// instances. Everything here is derived independently of the library's
// quadrature/root-finding path (plain std::exp / std::log algebra plus a
// local bisection), so these act as oracles for it.

#include <cmath>
#include <functional>

#include "bandopt/problem.hpp"

namespace oracle {

inline double bisect(const std::function<double(double)>& f, double lo,
                     double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// ---- R1: mu=1, sigma2=2 (lambda=1), h=|x|, k=ell=0.5, K=L=1 ----
// g_{A,B}(x) = A + x - 1 + (1-B)e^{-x}          (x <= 0)
//            = A - x + 1 - (B+1)e^{-x}          (x >= 0)
// x1(B) = ln(1-B), x2(B) = ln(1+B), Bbar = 1.
struct R1 {
  static constexpr double k = 0.5, ell = 0.5, K = 1.0, L = 1.0;

  static double g(double A, double B, double x) {
    return x <= 0 ? A + x - 1 + (1 - B) * std::exp(-x)
                  : A - x + 1 - (B + 1) * std::exp(-x);
  }
  // antiderivative of g, continuous across 0
  static double G(double A, double B, double x) {
    return x <= 0 ? A * x + 0.5 * x * x - x - (1 - B) * std::exp(-x)
                  : (A + 1) * x - 0.5 * x * x + (B + 1) * std::exp(-x) - 2;
  }
  static double x1(double B) { return std::log(1 - B); }
  static double x2(double B) { return std::log(1 + B); }

  // Hand algebra for the singular optimum (B1 = sqrt(1 - e^{-1})).
  static double B1() { return std::sqrt(1.0 - std::exp(-1.0)); }
  static double d_singular() { return std::log(1.0 - B1()); }
  static double u_singular() { return std::log(1.0 + B1()); }
  static double gamma_singular() { return u_singular() + 0.5; }

  // Impulse optimum, frozen from the closed-form cascade (bisection over
  // the closed-form g above; reproduced by the solve() helper below).
  static constexpr double B2_frozen = 0.897609805133319;
  static constexpr double Bstar_frozen = 0.947818595008372;
  static constexpr double gamma_frozen = 1.807144041918121;
  static constexpr double d_frozen = -3.909412698602409;
  static constexpr double D_frozen = -1.553974175159713;
  static constexpr double U_frozen = -0.383733521638499;
  static constexpr double u_frozen = 2.058518850972169;
};

// ---- quadratic: h = x^2, mu=1, sigma2=2, K=L=1, k=ell=0.5 ----
// g_{A,B}(x) = A - x^2 + 2x - 2 + (2-B)e^{-x}; x_i solve (x-1)e^x = B/2 - 1.
struct Quad {
  static double g(double A, double B, double x) {
    return A - x * x + 2 * x - 2 + (2 - B) * std::exp(-x);
  }
  static double G(double A, double B, double x) {
    return A * x - x * x * x / 3 + x * x - 2 * x - (2 - B) * std::exp(-x);
  }
  static double x1(double B) {
    return bisect([&](double x) { return (x - 1) * std::exp(x) - (B / 2 - 1); },
                  -60.0, 0.0);
  }
  static double x2(double B) {
    return bisect([&](double x) { return (x - 1) * std::exp(x) - (B / 2 - 1); },
                  0.0, 60.0);
  }
  static constexpr double B1_frozen = 0.671391367505727;
  static constexpr double gamma_frozen = 1.894717219510617;
  static constexpr double d_frozen = -2.463155453501608;
  static constexpr double D_frozen = -0.903086872595441;
  static constexpr double U_frozen = -0.243455151297896;
  static constexpr double u_frozen = 1.743381290793956;
  // singular variant (K=L=0)
  static constexpr double d_sing_frozen = -1.195361779792113;
  static constexpr double u_sing_frozen = 0.654896773994015;
  static constexpr double gamma_sing_frozen = 0.928889784587768;
};

// ---- shifted asymmetric linear: h' = -2 left of a=1, +3 right;
//      mu=1, sigma2=2, K=L=1, k=ell=0.5 ----
struct SL1 {
  static constexpr double gamma_frozen = 2.802302783469802;
  static constexpr double d_frozen = -1.846513171527014;
  static constexpr double D_frozen = 0.003745382259114;
  static constexpr double U_frozen = 0.671936625828315;
  static constexpr double u_frozen = 2.362474125273574;
};

// ---- nonneg h=|x| (x1 clamps at 0 for every B): gtilde(B) = B - ln(1+B) --
struct NonnegAbs {
  static constexpr double B1_frozen = 2.146193220621;
  static constexpr double B2_frozen = 3.042829964982;
  static constexpr double Bstar_frozen = 7.084869912378;
  static constexpr double gamma_frozen = 3.235879434756;
  static constexpr double D_frozen = 0.693049469775;
  static constexpr double U_frozen = 1.133610778072;
  static constexpr double u_frozen = 3.489049301515;
  static constexpr double alpha_frozen = 3.348990477622;
};

// Shared problem builders.
inline bandopt::ProblemSpec r1_impulse() {
  bandopt::ProblemSpec s;
  s.mu = 1;
  s.sigma2 = 2;
  s.K = 1;
  s.k = 0.5;
  s.L = 1;
  s.ell = 0.5;
  s.holding = bandopt::make_linear_holding(1, 1, 0);
  s.mode = bandopt::ControlMode::impulse;
  return s;
}

inline bandopt::ProblemSpec r1_singular() {
  bandopt::ProblemSpec s = r1_impulse();
  s.K = 0;
  s.L = 0;
  s.mode = bandopt::ControlMode::singular;
  return s;
}

inline bandopt::ProblemSpec quad_impulse() {
  bandopt::ProblemSpec s = r1_impulse();
  s.holding = bandopt::make_quadratic_holding(1.0, 0.0);
  return s;
}

inline bandopt::ProblemSpec sl1_impulse() {
  bandopt::ProblemSpec s = r1_impulse();
  s.holding = bandopt::make_linear_holding(2, 3, 1);
  return s;
}

inline bandopt::ProblemSpec nonneg_abs() {
  bandopt::ProblemSpec s = r1_impulse();
  s.mode = bandopt::ControlMode::nonneg_impulse;
  return s;
}

inline bandopt::ProblemSpec nonneg_slack() {
  bandopt::ProblemSpec s = r1_impulse();
  s.holding = bandopt::make_linear_holding(1, 1, 5);
  s.mode = bandopt::ControlMode::nonneg_impulse;
  return s;
}

}  // namespace oracle
