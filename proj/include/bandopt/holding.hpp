#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace bandopt {

/// Convex holding cost rate h with one-sided derivative h' and minimizer a,
/// h(a) = 0. At a kink, hprime returns the right derivative. Immutable after
/// construction.
class HoldingCost {
 public:
  enum class Family { linear, quadratic, power, custom };

  // Default-constructed value is linear(1, 1, 0).
  HoldingCost() = default;

  static HoldingCost make_linear(double backlog_slope, double excess_slope,
                                 double kink = 0.0) {
    if (!(backlog_slope > 0.0) || !(excess_slope > 0.0)) {
      throw std::invalid_argument(
          "linear holding cost: slopes must be positive");
    }
    HoldingCost hc;
    hc.family_ = Family::linear;
    hc.a_ = kink;
    hc.p0_ = backlog_slope;
    hc.p1_ = excess_slope;
    return hc;
  }

  static HoldingCost make_quadratic(double curvature, double center) {
    if (!(curvature > 0.0)) {
      throw std::invalid_argument(
          "quadratic holding cost: curvature must be positive");
    }
    HoldingCost hc;
    hc.family_ = Family::quadratic;
    hc.a_ = center;
    hc.p0_ = curvature;
    return hc;
  }

  static HoldingCost make_power(double exponent, double scale, double center) {
    if (!(exponent >= 1.0)) {
      throw std::invalid_argument(
          "power holding cost: exponent must be >= 1");
    }
    if (!(scale > 0.0)) {
      throw std::invalid_argument("power holding cost: scale must be positive");
    }
    HoldingCost hc;
    hc.family_ = Family::power;
    hc.a_ = center;
    hc.p0_ = exponent;
    hc.p1_ = scale;
    return hc;
  }

  /// Caller supplies both h and h'; no symbolic differentiation.
  static HoldingCost make_custom(double minimizer,
                                 std::function<double(double)> h,
                                 std::function<double(double)> hprime) {
    if (!h || !hprime) {
      throw std::invalid_argument(
          "custom holding cost: both h and hprime are required");
    }
    HoldingCost hc;
    hc.family_ = Family::custom;
    hc.a_ = minimizer;
    hc.fh_ = std::move(h);
    hc.fhp_ = std::move(hprime);
    return hc;
  }

  double operator()(double x) const { return h(x); }

  double h(double x) const {
    switch (family_) {
      case Family::linear:
        return x < a_ ? p0_ * (a_ - x) : p1_ * (x - a_);
      case Family::quadratic: {
        const double s = x - a_;
        return p0_ * s * s;
      }
      case Family::power:
        return p1_ * std::pow(std::abs(x - a_), p0_);
      case Family::custom:
        return fh_(x);
    }
    return 0.0;
  }

  double hprime(double x) const {
    switch (family_) {
      case Family::linear:
        return x < a_ ? -p0_ : p1_;
      case Family::quadratic:
        return 2.0 * p0_ * (x - a_);
      case Family::power: {
        const double s = x - a_;
        if (s == 0.0) return p0_ == 1.0 ? p1_ : 0.0;  // right derivative
        const double mag = p1_ * p0_ * std::pow(std::abs(s), p0_ - 1.0);
        return s < 0.0 ? -mag : mag;
      }
      case Family::custom:
        return fhp_(x);
    }
    return 0.0;
  }

  double minimizer() const noexcept { return a_; }
  Family family() const noexcept { return family_; }

  /// Spatial reflection x -> -x (used for solving mu < 0 instances).
  HoldingCost reflected() const {
    switch (family_) {
      case Family::linear:
        return make_linear(p1_, p0_, -a_);
      case Family::quadratic:
        return make_quadratic(p0_, -a_);
      case Family::power:
        return make_power(p0_, p1_, -a_);
      case Family::custom: {
        auto h = fh_;
        auto hp = fhp_;
        return make_custom(
            -a_, [h](double x) { return h(-x); },
            [hp](double x) { return -hp(-x); });
      }
    }
    return *this;
  }

  // Family parameters, exposed for config echo and serialization.
  double param0() const noexcept { return p0_; }
  double param1() const noexcept { return p1_; }

 private:
  Family family_ = Family::linear;
  double a_ = 0.0;
  double p0_ = 1.0;  // linear: backlog slope; quadratic: curvature; power: exponent
  double p1_ = 1.0;  // linear: excess slope; power: scale
  std::function<double(double)> fh_, fhp_;
};

inline HoldingCost make_linear_holding(double p, double c, double a = 0.0) {
  return HoldingCost::make_linear(p, c, a);
}

inline HoldingCost make_quadratic_holding(double q, double center) {
  return HoldingCost::make_quadratic(q, center);
}

inline HoldingCost make_power_holding(double exponent, double scale,
                                      double center) {
  return HoldingCost::make_power(exponent, scale, center);
}

}  // namespace bandopt
