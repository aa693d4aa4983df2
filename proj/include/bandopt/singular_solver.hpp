#pragma once

#include "bandopt/band.hpp"

namespace bandopt {

/// Two-parameter free boundary solve for K = L = 0: B* = B1, d* = x1(B*),
/// u* = x2(B*), with second-order smooth pasting (g = -k/ell and g' = 0 at
/// both barriers).
Solution solve_singular(const ProblemSpec& spec,
                        const SolverOptions& opt = {});

}  // namespace bandopt
