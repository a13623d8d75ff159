#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace interlace {

/// Seeded random stream with hand-rolled distributions, so a given seed yields
/// the same draws on every platform/stdlib (std:: distributions do not promise
/// that). Used by the randomized verification suites.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Standard normal via Box-Muller.
  double normal() {
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(gen_() % span);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace interlace
