#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>

namespace bandopt::detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// xoshiro256++. Per-replication streams are derived from
/// (base_seed, replication index) via splitmix64, so streams are a pure
/// function of the pair: order-independent and parallel-safe.
class Xoshiro256pp {
 public:
  Xoshiro256pp(std::uint64_t base_seed, std::uint64_t stream) {
    std::uint64_t sm = base_seed ^ (0xD1B54A32D192ED03ULL * (stream + 1));
    for (auto& w : s_) w = splitmix64(sm);
  }

  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform in (0, 1]
  double uniform() noexcept {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int s) noexcept {
    return (x << s) | (x >> (64 - s));
  }
  std::array<std::uint64_t, 4> s_;
};

/// 128-strip ziggurat for the standard normal (Marsaglia-Tsang constants).
/// Strip widths X[] decrease with the index: X[0] = v/f(R) is the base
/// pseudo-width, X[1] = R, X[128] = 0. Strip i is the rectangle
/// [0, X[i]] x [f(X[i]), f(X[i+1])]; the base strip holds [0, R] plus the
/// tail. The low 7 bits of one draw pick the strip, the high 52 give a
/// signed uniform position.
class ZigguratNormal {
 public:
  ZigguratNormal();

  double operator()(Xoshiro256pp& rng) const noexcept {
    while (true) {
      const std::uint64_t bits = rng.next();
      const int idx = static_cast<int>(bits & 127);
      const std::int64_t j =
          static_cast<std::int64_t>(bits >> 12) - (1LL << 51);
      const double x = static_cast<double>(j) * w_[idx];
      if (std::llabs(j) < kx_[idx]) return x;  // inside the next strip: fast
      if (idx == 0) return tail(rng, j < 0);
      if (f_[idx] + rng.uniform() * (f_[idx + 1] - f_[idx]) <
          std::exp(-0.5 * x * x)) {
        return x;
      }
    }
  }

 private:
  static double tail(Xoshiro256pp& rng, bool negative) noexcept {
    double x, y;
    do {
      x = -std::log(rng.uniform()) / kR;
      y = -std::log(rng.uniform());
    } while (y + y < x * x);
    return negative ? -(kR + x) : (kR + x);
  }

  static constexpr double kR = 3.442619855899;
  std::array<std::int64_t, 128> kx_;
  std::array<double, 128> w_;
  std::array<double, 129> f_;
};

const ZigguratNormal& ziggurat();

}  // namespace bandopt::detail
