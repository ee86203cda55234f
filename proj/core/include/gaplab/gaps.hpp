#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gaplab/numtheory.hpp"
#include "gaplab/sequences.hpp"

namespace gaplab {

inline constexpr std::size_t kDefaultBruteForceCap = 2000;

/// delta_min^alpha(N) as an exact dyadic. `degenerate` is set when two points
/// a_m alpha, a_n alpha coincide exactly (delta = 0).
struct GapResult {
  Dyadic delta;
  bool degenerate = false;

  friend bool operator==(const GapResult&, const GapResult&) = default;
};

/// min over pairs m != n of ||(a_m - a_n) alpha||. Requires 2 <= N <= cap.
[[nodiscard]] GapResult min_gap_bruteforce(std::span<const Term> terms, AlphaFixed alpha,
                                           std::size_t cap = kDefaultBruteForceCap);

/// Smallest circular gap between the sorted points a_n alpha mod 1.
[[nodiscard]] GapResult min_gap_sorted(std::span<const Term> terms, AlphaFixed alpha);

/// delta_min^alpha(N) for N = 2..N_max.
struct GapTrajectory {
  AlphaFixed alpha;
  std::vector<std::size_t> ns;
  std::vector<Dyadic> deltas;
  /// First N at which two points coincided, or 0 if none did.
  std::size_t first_degenerate_n = 0;

  [[nodiscard]] std::size_t size() const { return ns.size(); }
  /// delta at truncation length n (2 <= n <= N_max).
  [[nodiscard]] Dyadic at(std::size_t n) const { return deltas.at(n - 2); }
};

/// Incremental trajectory: each insertion creates two gaps against its
/// circular neighbours and destroys their sum, so the running minimum only
/// needs to see the two new gaps. O(N_max log N_max).
[[nodiscard]] GapTrajectory min_gap_trajectory(std::span<const Term> terms, AlphaFixed alpha);
[[nodiscard]] GapTrajectory min_gap_trajectory(IntegerSequence& seq, AlphaFixed alpha,
                                               std::size_t n_max);

}  // namespace gaplab
