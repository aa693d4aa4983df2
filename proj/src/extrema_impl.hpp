#pragma once

#include <stdexcept>

#include "bandopt/gcurve.hpp"
#include "bandopt/roots.hpp"

namespace bandopt::detail {

/// Shared extrema search over any F1 evaluator: x1 on the strictly
/// increasing branch left of a (clamped at 0 in nonneg mode once
/// B >= bound), x2 on the strictly decreasing branch right of a.
template <class F1Fn>
ExtremaPair extrema_from_f1(F1Fn&& f1, double a, double B, bool nonneg,
                            double bound, const RootOptions& ropt) {
  if (!(B > 0.0)) {
    throw std::domain_error("find_extrema: B must be positive");
  }
  ExtremaPair out;
  if (nonneg) {
    if (B >= bound || a == 0.0) {
      out.x1 = 0.0;
      out.x1_clamped_at_zero = true;
    } else {
      // F1(B, 0) = B - Bbar1 < 0 <= B = F1(B, a)
      out.x1 = bisect(f1, 0.0, a, B - bound, B, ropt, "find_extrema.x1");
    }
  } else {
    if (!(B < bound)) {
      throw std::domain_error("find_extrema: B must lie in (0, Bbar)");
    }
    const double lo = expand_bracket(f1, a, B, -1, ropt, "find_extrema.x1");
    out.x1 = bisect(f1, lo, a, f1(lo), B, ropt, "find_extrema.x1");
  }
  const double hi = expand_bracket(f1, a, B, +1, ropt, "find_extrema.x2");
  out.x2 = bisect(f1, a, hi, B, f1(hi), ropt, "find_extrema.x2");
  return out;
}

}  // namespace bandopt::detail
