#include "rng.hpp"

namespace bandopt::detail {

ZigguratNormal::ZigguratNormal() {
  // Equal-area construction: v is the common strip area, R the base edge.
  const double v = 9.91256303526217e-3;
  const double scale = 0x1.0p51;
  std::array<double, 129> xs{};
  xs[0] = v / std::exp(-0.5 * kR * kR);  // base pseudo-width, > R
  xs[1] = kR;
  for (int i = 2; i < 128; ++i) {
    const double prev = xs[i - 1];
    xs[i] = std::sqrt(
        -2.0 * std::log(v / prev + std::exp(-0.5 * prev * prev)));
  }
  xs[128] = 0.0;
  for (int i = 0; i < 128; ++i) {
    kx_[i] = static_cast<std::int64_t>(scale * (xs[i + 1] / xs[i]));
    w_[i] = xs[i] / scale;
    f_[i] = std::exp(-0.5 * xs[i] * xs[i]);
  }
  f_[128] = 1.0;
  f_[0] = std::exp(-0.5 * kR * kR);  // base strip's curve height is f(R)
}

const ZigguratNormal& ziggurat() {
  static const ZigguratNormal z;
  return z;
}

}  // namespace bandopt::detail
