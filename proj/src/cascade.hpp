#pragma once

#include <optional>
#include <utility>

#include "bandopt/band.hpp"
#include "bandopt/gcurve.hpp"
#include "curve_eval.hpp"

namespace bandopt::detail {

/// The nested monotone root-finding cascade behind the impulse, singular
/// and nonnegative solvers. Requires lambda > 0 (callers reflect mu < 0
/// instances first). In nonneg mode the B domain is (0, inf), the local
/// minimizer clamps at 0 past Bbar1, and the lower trigger clamps at 0.
class Cascade {
 public:
  Cascade(const ProblemSpec& spec, bool nonneg, const SolverOptions& opt);

  double Bbar() const;   // backlog upper B limit (finite)
  double Bbar1() const;  // nonneg clamping threshold

  ExtremaPair extrema(double B) const;
  double gtilde(double B) const;
  double B1() const;
  std::pair<double, double> A_bounds(double B) const;
  std::pair<double, double> find_Uu(double A, double B) const;
  double Lambda2(double A, double B) const;
  double B2() const;
  double solve_Astar(double B) const;
  std::pair<double, double> find_dD(double A, double B) const;
  double Lambda1(double A, double B) const;

  Solution solve_impulse() const;
  Solution solve_singular() const;

  const CurveEvaluator& eval() const noexcept { return ev_; }

 private:
  // Per-B quantities shared by every A iteration at that B.
  struct BContext {
    double B = 0.0;
    ExtremaPair ex;
    double a_lower = 0.0;  // h(x2)/mu + ell
    double a_upper = 0.0;  // -k - g_{0,B}(x1)
  };
  BContext b_context(double B) const;
  std::pair<double, double> find_Uu_at(double A, const BContext& c) const;
  double Lambda2_at(double A, const BContext& c) const;
  double solve_Astar_at(const BContext& c) const;
  std::pair<double, double> find_dD_at(double A, const BContext& c) const;
  double Lambda1_of_Astar(const BContext& c) const;

  double g_at_x1(double A, double B, const ExtremaPair& ex) const;
  // Bracket helpers near open endpoints: offsets start at 1e-9 * span and
  // shrink geometrically until the function value has the required sign.
  double shrink_lo(const std::function<double(double)>& f, double endpoint,
                   double span, bool want_negative, const char* stage) const;
  double shrink_hi_toward(const std::function<double(double)>& f,
                          double endpoint, double span, bool want_negative,
                          const char* stage) const;
  double expand_hi(const std::function<double(double)>& f, double start,
                   bool want_negative, const char* stage) const;

  const ProblemSpec& spec_;
  bool nonneg_;
  SolverOptions opt_;
  RootOptions ropt_;
  CurveEvaluator ev_;
  mutable std::optional<double> bbar_, bbar1_, b1_, b2_;
};

Solution reflect_back(const Solution& mirrored);

}  // namespace bandopt::detail
