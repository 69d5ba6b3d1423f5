#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

namespace robench {

// Fixed seeds for a run. Defaults: sampling 42, augmentation base 1234,
// generation 42.
struct SeedScheme {
  std::uint32_t sampling_seed = 42;
  std::uint32_t augmentation_base_seed = 1234;
  std::uint32_t generation_seed = 42;
};

// Per-sample seed: (base * 1000003 + index) mod 2^32.
//
// base * 1000003 fits in 64 bits (< 2^52); adding a 64-bit index may wrap,
// but wrapping is mod 2^64 and 2^32 divides 2^64, so the truncation to
// 32 bits is still the exact mathematical result. Indices >= 2^32 can
// therefore collide with smaller ones across 2^32 windows; within one
// window seeds are distinct.
inline std::uint32_t sample_seed(std::uint32_t base, std::uint64_t index) {
  const std::uint64_t mixed = static_cast<std::uint64_t>(base) * 1000003ull + index;
  return static_cast<std::uint32_t>(mixed);
}

// Portable deterministic random stream (splitmix64). A value type: copy it,
// move it across threads, never share one instance mutably. Identical seed
// gives an identical sequence on every platform.
class RngStream {
 public:
  explicit RngStream(std::uint64_t state) : state_(state) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 mantissa bits.
  double next_f64() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_f64(); }

  // Uniform integer in [0, n). Modulo reduction: the bias of at most
  // n / 2^64 is irrelevant here, and the draw count stays fixed.
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  // Standard normal via Box-Muller. Consumes two uniform draws and caches
  // the second output, so consecutive calls alternate draw/no-draw in a
  // fixed pattern.
  double next_gaussian() {
    if (cached_) {
      const double v = *cached_;
      cached_.reset();
      return v;
    }
    const double u1 = next_f64();
    const double u2 = next_f64();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));  // 1-u1 in (0,1]
    const double theta = 2.0 * M_PI * u2;
    cached_ = r * std::sin(theta);
    return r * std::cos(theta);
  }

 private:
  std::uint64_t state_;
  std::optional<double> cached_;
};

// The u32 seed is zero-extended into the 64-bit splitmix64 state.
inline RngStream make_rng(std::uint32_t seed) {
  return RngStream(static_cast<std::uint64_t>(seed));
}

}  // namespace robench
