#include "curve_eval.hpp"

#include <algorithm>
#include <cmath>

#include "bandopt/quadrature.hpp"

namespace bandopt::detail {

namespace {
// Past this value of lambda (a - x), the anchored transform's quadrature
// error would be amplified by e^{lambda (a-x)}; switch to the tail form.
constexpr double kTailSwitch = 5.0;
// Lattice growth cap; band quantities live within a few units of the kink.
constexpr std::size_t kMaxLatticeNodes = 1u << 20;
}  // namespace

CurveEvaluator::CurveEvaluator(const ProblemSpec& spec, double quad_tol)
    : spec_(spec),
      quad_tol_(quad_tol),
      lam_(spec.lambda()),
      a_(spec.holding.minimizer()) {
  if (!(lam_ > 0.0)) {
    throw std::domain_error("CurveEvaluator: requires lambda > 0");
  }
  seg_tol_ = std::min(1e-13, 0.05 * quad_tol);
  part_tol_ = std::min(1e-12, quad_tol);
}

double CurveEvaluator::bbar() const {
  if (!bbar_) bbar_ = compute_Bbar(spec_, std::min(quad_tol_, 1e-13));
  return *bbar_;
}

double CurveEvaluator::T(double x) const {
  // Left-limit of h' at the kink: the backlog-side integrand must not see
  // the right derivative at y = a.
  const double a_minus =
      std::nextafter(a_, -std::numeric_limits<double>::infinity());
  auto integrand = [&](double y) {
    return spec_.holding.hprime(y == a_ ? a_minus : y) *
           std::exp(lam_ * (y - a_));
  };
  const std::size_t j =
      static_cast<std::size_t>(std::floor((a_ - x) / kStep));
  while (t_nodes_.size() < j) {
    const std::size_t n = t_nodes_.size() + 1;
    const double prev = n == 1 ? 0.0 : t_nodes_[n - 2];
    const double seg = adaptive_simpson(integrand, a_ - (n - 1) * kStep,
                                        a_ - n * kStep, seg_tol_);
    t_nodes_.push_back(prev + seg);
  }
  const double node_x = a_ - static_cast<double>(j) * kStep;
  const double node_val = j == 0 ? 0.0 : t_nodes_[j - 1];
  if (x == node_x) return node_val;
  return node_val + adaptive_simpson(integrand, node_x, x, part_tol_);
}

double CurveEvaluator::I(double x) const {
  const std::size_t j =
      static_cast<std::size_t>(std::floor((x - a_) / kStep));
  if (j > kMaxLatticeNodes) {
    throw NumericError("curve_eval.I", "query too far right of the kink", x);
  }
  const double decay = std::exp(-lam_ * kStep);
  while (i_nodes_.size() < j) {
    const std::size_t n = i_nodes_.size() + 1;
    const double right = a_ + n * kStep;
    auto integrand = [&](double y) {
      return spec_.holding.hprime(y) * std::exp(lam_ * (y - right));
    };
    const double prev = n == 1 ? 0.0 : i_nodes_[n - 2];
    const double seg =
        adaptive_simpson(integrand, right - kStep, right, seg_tol_);
    i_nodes_.push_back(prev * decay + seg);
  }
  const double node_x = a_ + static_cast<double>(j) * kStep;
  const double node_val = j == 0 ? 0.0 : i_nodes_[j - 1];
  if (x == node_x) return node_val;
  auto integrand = [&](double y) {
    return spec_.holding.hprime(y) * std::exp(lam_ * (y - x));
  };
  return node_val * std::exp(-lam_ * (x - node_x)) +
         adaptive_simpson(integrand, node_x, x, part_tol_);
}

// W chains rightward across the lattice with decay factors <= 1: the
// truncation error of the frontier anchor and every segment error decay
// toward a, so the per-query error stays at the segment tolerance.
void CurveEvaluator::extend_w_lattice(std::size_t j) const {
  if (w_nodes_.size() >= j) return;
  if (j > kMaxLatticeNodes) {
    throw NumericError("curve_eval.W", "query too far left of the kink",
                       static_cast<double>(j) * kStep);
  }
  const std::size_t old = w_nodes_.size();
  w_nodes_.resize(j);
  w_nodes_[j - 1] = tail_transform(spec_, a_ - static_cast<double>(j) * kStep,
                                   std::min(quad_tol_, 1e-12));
  const double decay = std::exp(-lam_ * kStep);
  for (std::size_t i = j - 1; i > old; --i) {
    const double right = a_ - static_cast<double>(i) * kStep;
    auto integrand = [&](double y) {
      return spec_.holding.hprime(y) * std::exp(lam_ * (y - right));
    };
    w_nodes_[i - 1] = w_nodes_[i] * decay +
                      adaptive_simpson(integrand, right - kStep, right,
                                       seg_tol_);
  }
}

double CurveEvaluator::W(double x) const {
  const std::size_t j =
      static_cast<std::size_t>(std::floor((a_ - x) / kStep));
  // node_{j+1} = a - (j+1) step <= x: anchor left of x.
  extend_w_lattice(j + 1);
  const double node_x = a_ - static_cast<double>(j + 1) * kStep;
  if (x == node_x) return w_nodes_[j];
  auto integrand = [&](double y) {
    return spec_.holding.hprime(y) * std::exp(lam_ * (y - x));
  };
  return w_nodes_[j] * std::exp(-lam_ * (x - node_x)) +
         adaptive_simpson(integrand, node_x, x, part_tol_);
}

double CurveEvaluator::F1(double B, double x) const {
  if (x == a_) return B;
  if (x > a_) {
    if (lam_ * (x - a_) > 600.0) {
      return -std::numeric_limits<double>::infinity();
    }
    return B - I(x) * std::exp(lam_ * (x - a_)) / spec_.mu;
  }
  if (lam_ * (a_ - x) > kTailSwitch) {
    return (B - bbar()) - std::exp(lam_ * (x - a_)) * W(x) / spec_.mu;
  }
  return B - T(x) / spec_.mu;
}

double CurveEvaluator::g(double A, double B, double x) const {
  const double base = A - spec_.holding.h(x) / spec_.mu;
  if (x >= a_) {
    return base - B * std::exp(-lam_ * (x - a_)) + I(x) / spec_.mu;
  }
  const double w = lam_ * (a_ - x);
  if (w > kTailSwitch) {
    const double diff = B - bbar();
    double term;
    if (w > 690.0) {
      term = diff > 0 ? kGCap : (diff < 0 ? -kGCap : 0.0);
    } else {
      term = std::clamp(diff * std::exp(w), -kGCap, kGCap);
    }
    return std::clamp(base - term + W(x) / spec_.mu, -kGCap, kGCap);
  }
  const double f1 = B - T(x) / spec_.mu;
  const double term = std::clamp(f1 * std::exp(w), -kGCap, kGCap);
  return std::clamp(base - term, -kGCap, kGCap);
}

double CurveEvaluator::g_prime(double B, double x) const {
  if (x >= a_) {
    return lam_ * (B * std::exp(-lam_ * (x - a_)) - I(x) / spec_.mu);
  }
  const double w = lam_ * (a_ - x);
  if (w > kTailSwitch) {
    const double diff = B - bbar();
    double term;
    if (w > 690.0) {
      term = diff > 0 ? kGCap : (diff < 0 ? -kGCap : 0.0);
    } else {
      term = std::clamp(diff * std::exp(w), -kGCap, kGCap);
    }
    return std::clamp(lam_ * (term - W(x) / spec_.mu), -kGCap, kGCap);
  }
  const double f1 = B - T(x) / spec_.mu;
  return std::clamp(lam_ * f1 * std::exp(w), -kGCap, kGCap);
}

double CurveEvaluator::integral_g_plus(double A, double B, double lo,
                                       double hi, double shift) const {
  auto f = [&](double x) { return g(A, B, x) + shift; };
  if (lo < a_ && a_ < hi) {
    return adaptive_simpson(f, lo, a_, 0.5 * quad_tol_) +
           adaptive_simpson(f, a_, hi, 0.5 * quad_tol_);
  }
  return adaptive_simpson(f, lo, hi, quad_tol_);
}

}  // namespace bandopt::detail
