#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <span>
#include <vector>

#include "gaplab/errors.hpp"
#include "gaplab/sequences.hpp"

namespace gaplab {

using u128 = unsigned __int128;

inline constexpr std::size_t kDefaultDirectCap = 5000;
/// Largest a_N - a_1 accepted by the transform route.
inline constexpr std::uint64_t kDefaultConvolutionCapacity = std::uint64_t{1} << 27;
/// Largest number of keys of a dense difference table (bitset or map).
inline constexpr std::uint64_t kDefaultKeyCapacity = std::uint64_t{1} << 32;

/// Difference-set statistics of a truncation A_N.
///
/// Positive differences are stored sorted in `diffs`, with rep_N(u) in the
/// parallel array `reps`. rep_N(0) = N is implicit.
struct DiffStats {
  std::size_t n = 0;
  std::uint64_t c_plus = 0;  ///< #(A_N - A_N)^+
  std::uint64_t c_full = 0;  ///< #(A_N - A_N) = 2 c_plus + 1
  u128 energy = 0;           ///< E_N = sum_u rep_N(u)^2
  std::vector<std::uint64_t> diffs;
  std::vector<std::uint32_t> reps;

  /// rep_N(u) for any integer u (symmetric, rep(0) = N).
  [[nodiscard]] std::uint64_t rep(std::int64_t u) const;

  friend bool operator==(const DiffStats&, const DiffStats&) = default;
};

/// Exact rep counts by enumerating all pairs. N <= cap.
[[nodiscard]] DiffStats rep_counts_direct(std::span<const Term> terms,
                                          std::size_t cap = kDefaultDirectCap);

/// Exact rep counts from the autocorrelation of the 0/1 indicator of A_N
/// on [a_1, a_N], via a number-theoretic transform. Counts are bounded by
/// N, far below the modulus, so the residues are the integers themselves.
/// Requires a_N - a_1 <= capacity.
[[nodiscard]] DiffStats rep_counts_fast(
    std::span<const Term> terms, std::uint64_t capacity = kDefaultConvolutionCapacity);

/// Exact rep counts choosing the cheaper of the transform route and a
/// pair enumeration with sort-and-count (no N cap, memory-bounded).
[[nodiscard]] DiffStats rep_counts(std::span<const Term> terms);

/// Validates that terms are strictly increasing and positive.
void require_strictly_increasing(std::span<const Term> terms);

/// One row of a difference-set trajectory.
struct DiffTrajectoryRow {
  std::size_t n = 0;
  std::uint64_t c_plus = 0;
  std::uint64_t c_full = 0;
  u128 energy = 0;  ///< zero when energy tracking is disabled
};

/// Incrementally maintained difference set (A_M - A_M)^+ as terms are added.
///
/// Keeps a bitset over [1, a_M - a_1]; optionally dense rep counts for E_M.
class DifferenceTracker {
 public:
  explicit DifferenceTracker(bool track_energy = false,
                             std::uint64_t key_capacity = kDefaultKeyCapacity);

  /// Adds the next term (must exceed the previous one). Calls
  /// on_new(u) for every difference u that was not present before.
  template <typename OnNew>
  void add(Term t, OnNew&& on_new);
  void add(Term t) {
    add(t, [](std::uint64_t) {});
  }

  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] std::uint64_t c_plus() const { return c_plus_; }
  [[nodiscard]] std::uint64_t c_full() const { return 2 * c_plus_ + 1; }
  [[nodiscard]] u128 energy() const { return energy_; }
  [[nodiscard]] bool contains(std::uint64_t u) const;

 private:
  void ensure_capacity(std::uint64_t max_diff);

  bool track_energy_;
  std::uint64_t key_capacity_;
  std::vector<Term> terms_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> rep_;
  std::uint64_t c_plus_ = 0;
  u128 sum_rep_sq_ = 0;  // sum over u >= 1
  u128 energy_ = 0;
};

/// C_N (and E_N if requested) for every N = 1..n_max.
[[nodiscard]] std::vector<DiffTrajectoryRow> diff_trajectory(std::span<const Term> terms,
                                                             bool track_energy);

/// k -> first truncation length M with k in (A_M - A_M)^+.
///
/// Complete for keys <= key_limit() within the horizon; lookups of keys above
/// the largest possible difference report absence.
class FirstOccurrenceMap {
 public:
  FirstOccurrenceMap() = default;

  [[nodiscard]] std::size_t horizon() const { return horizon_; }
  [[nodiscard]] std::uint64_t key_limit() const { return key_limit_; }
  [[nodiscard]] std::uint64_t max_difference() const { return max_diff_; }
  /// Number of keys present.
  [[nodiscard]] std::uint64_t size() const { return count_; }

  /// N(k), or nullopt if k never occurs within the horizon. Throws
  /// HorizonError for key_limit() < k <= max_difference().
  [[nodiscard]] std::optional<std::uint32_t> at(std::uint64_t k) const;

  friend FirstOccurrenceMap first_occurrence(std::span<const Term>, std::uint64_t);

 private:
  std::size_t horizon_ = 0;
  std::uint64_t key_limit_ = 0;
  std::uint64_t max_diff_ = 0;
  std::uint64_t count_ = 0;
  std::vector<std::uint32_t> first_;  // index k, 0 = absent
};

/// Builds N(k) for all keys k <= key_limit (0 = all keys) from the prefix
/// a_1..a_{N_max} given as `terms`.
[[nodiscard]] FirstOccurrenceMap first_occurrence(std::span<const Term> terms,
                                                  std::uint64_t key_limit = 0);
[[nodiscard]] FirstOccurrenceMap first_occurrence(IntegerSequence& seq, std::size_t n_max,
                                                  std::uint64_t key_limit = 0);

/// Canonical enumeration z_1, z_2, ...: for N = 2, 3, ..., the new elements
/// of (A_N - A_N)^+ in increasing order.
[[nodiscard]] std::vector<std::uint64_t> z_enumeration(std::span<const Term> terms);
[[nodiscard]] std::vector<std::uint64_t> z_enumeration(IntegerSequence& seq,
                                                       std::size_t n_max);

/// sum over ordered pairs gcd(v_m, v_n) / sqrt(v_m v_n).
[[nodiscard]] double gcd_sum(std::span<const std::uint64_t> values);

/// RFC-4180 CSV: N,C_plus,C_full,E,ratio_E_lower,ratio_E_upper,C_over_N_log_N
void write_diffstats_csv(std::ostream& out, std::span<const DiffTrajectoryRow> rows);

/// Decimal rendering of an unsigned 128-bit integer.
[[nodiscard]] std::string to_string_u128(u128 v);

// --- implementation of the template member ---

template <typename OnNew>
void DifferenceTracker::add(Term t, OnNew&& on_new) {
  if (!terms_.empty() && t <= terms_.back()) {
    throw InvalidArgument("DifferenceTracker: terms must be strictly increasing");
  }
  if (!terms_.empty()) ensure_capacity(t - terms_.front());
  const std::size_t old_n = terms_.size();
  for (const Term prev : terms_) {
    const std::uint64_t u = t - prev;
    std::uint64_t& word = bits_[u >> 6U];
    const std::uint64_t mask = std::uint64_t{1} << (u & 63U);
    if ((word & mask) == 0) {
      word |= mask;
      ++c_plus_;
      on_new(u);
    }
    if (track_energy_) {
      const std::uint32_t r = rep_[u]++;
      sum_rep_sq_ += 2 * static_cast<u128>(r) + 1;
    }
  }
  terms_.push_back(t);
  if (track_energy_) {
    const u128 n = old_n + 1;
    energy_ = n * n + 2 * sum_rep_sq_;
  }
}

}  // namespace gaplab
