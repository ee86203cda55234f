#pragma once

#include <cstdint>

#include "gaplab/numtheory.hpp"

namespace gaplab {

/// SplitMix64 (Steele, Lea, Flood). Constants are the published ones so the
/// stream is reproducible from any language.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// The SplitMix64 output finalizer.
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  constexpr std::uint64_t operator()() { return next(); }

  /// Uniform in [0, bound) by 128-bit multiply-shift; bound > 0.
  constexpr std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

 private:
  std::uint64_t state_;
};

/// Seed of trial `index` under `master_seed`:
/// mix(master_seed + (index + 1) * kGamma). Independent of scheduling order.
constexpr std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t index) {
  return SplitMix64::mix(master_seed + (index + 1) * SplitMix64::kGamma);
}

/// A torus point with odd numerator, so ||k alpha|| > 0 for all 1 <= k < 2^64.
inline AlphaFixed sample_alpha(SplitMix64& rng) {
  return AlphaFixed{rng.next() | 1U};
}

}  // namespace gaplab
