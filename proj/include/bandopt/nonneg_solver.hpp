#pragma once

#include "bandopt/band.hpp"

namespace bandopt {

/// Impulse solve under the constraint Z(t) >= 0: the cascade runs on
/// (0, inf) with the local minimizer clamped at 0 once B >= Bbar1, the
/// lower trigger clamped at d = 0 when g(0) <= -k, and the multiplier
/// alpha* = max(0, -(k + g(0))) with alpha* d* = 0.
Solution solve_nonneg(const ProblemSpec& spec, const SolverOptions& opt = {});

}  // namespace bandopt
