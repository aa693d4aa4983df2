#pragma once

#include <utility>

#include "bandopt/band.hpp"
#include "bandopt/gcurve.hpp"

namespace bandopt {

/// Height difference g_{.,B}(x2(B)) - g_{.,B}(x1(B)) between the local
/// maximum and minimum; independent of A. Strictly increasing in B.
double gtilde(const ProblemSpec& spec, double B,
              const SolverOptions& opt = {});

/// Unique root of gtilde(B) = k + ell on (0, Bbar).
double solve_B1(const ProblemSpec& spec, const SolverOptions& opt = {});

/// (A_lower, A_upper) = (h(x2)/mu + ell, h(x1)/mu - k); the admissible A
/// range for a given B in (B1, Bbar).
std::pair<double, double> A_bounds(const ProblemSpec& spec, double B,
                                   const SolverOptions& opt = {});

/// Roots U < u of g_{A,B} = ell on the increasing branch (x1, x2) and the
/// decreasing branch (x2, inf).
std::pair<double, double> find_Uu(const ProblemSpec& spec, double A, double B,
                                  const SolverOptions& opt = {});

/// Lambda2(A, B) = int_U^u (g_{A,B} - ell) dx >= 0.
double Lambda2(const ProblemSpec& spec, double A, double B,
               const SolverOptions& opt = {});

/// Unique root of Lambda2(A_upper(B), B) = L on (B1, Bbar).
double solve_B2(const ProblemSpec& spec, const SolverOptions& opt = {});

/// Unique root A*(B) of Lambda2(A, B) = L on (A_lower(B), A_upper(B)],
/// defined for B in [B2, Bbar).
double solve_Astar(const ProblemSpec& spec, double B,
                   const SolverOptions& opt = {});

/// Roots d < D of g_{A,B} = -k on the branches around x1(B). Requires
/// g(x1(B)) < -k.
std::pair<double, double> find_dD(const ProblemSpec& spec, double A, double B,
                                  const SolverOptions& opt = {});

/// Lambda1(A, B) = int_d^D (g_{A,B} + k) dx <= 0.
double Lambda1(const ProblemSpec& spec, double A, double B,
               const SolverOptions& opt = {});

/// Full four-parameter free-boundary solve: the monotone cascade
/// Bbar -> B1 -> B2 -> B* -> A*, then the band roots. mu < 0 instances are
/// solved on the reflection and mapped back (Solution.reflected = true).
Solution solve_impulse(const ProblemSpec& spec, const SolverOptions& opt = {});

}  // namespace bandopt
