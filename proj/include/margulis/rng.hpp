#pragma once

#include <cstdint>
#include <random>

namespace margulis {

/// mt19937_64 with explicit bit-to-double conversion, so that streams are
/// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1), 53 bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  double symmetric(double mag) { return uniform(-mag, mag); }

  /// Uniform integer in [lo, hi], inclusive, by rejection.
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return lo + static_cast<int>(x % span);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace margulis
