#pragma once

#include <cmath>
#include <cstdint>

namespace sepsim {

// Seed-mixing contract, frozen: trial k of master seed s runs on a SplitMix64
// stream seeded with mix64(s + (k + 1) * kGoldenGamma). Golden values recorded
// in the tests depend on these exact constants.
inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ull;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t substream_seed(std::uint64_t master,
                                       std::uint64_t index) noexcept {
  return mix64(master + (index + 1) * kGoldenGamma);
}

/// Deterministic 64-bit stream (SplitMix64). Cheap to construct, so every
/// trial gets its own instance and trials are order-independent.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits. Never returns 1.0.
  double next_unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Unbiased integer in [0, bound) via Lemire's multiply-shift rejection.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    std::uint64_t x = next();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      std::uint64_t threshold = (0 - bound) % bound;
      while (lo < threshold) {
        x = next();
        m = static_cast<__uint128_t>(x) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool next_bernoulli(double p) noexcept { return next_unit() < p; }

  /// Poisson count by accumulating unit-rate exponential arrivals until the
  /// sum exceeds mean. Exact for any mean (no exp(-mean) underflow); runs in
  /// O(mean) draws, which is fine at the intensities used here.
  std::uint64_t next_poisson(double mean) noexcept {
    std::uint64_t k = 0;
    double acc = 0.0;
    for (;;) {
      acc += -std::log1p(-next_unit());
      if (acc > mean) return k;
      ++k;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace sepsim
