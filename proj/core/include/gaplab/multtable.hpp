#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>

namespace gaplab {

/// Default bound on bits held by one bitset (x for H, N^2 for tables).
inline constexpr std::uint64_t kDefaultBitsetCapacity = std::uint64_t{1} << 31;
/// Above this many table entries the counters sweep fixed-size value segments.
inline constexpr std::uint64_t kSegmentThreshold = 1'600'000'000;  // N ~ 4e4
inline constexpr std::uint64_t kSegmentBits = std::uint64_t{1} << 30;

/// Parameters of H(x, y, z) = #{n <= x : some d | n has y < d <= z}.
struct HQuery {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  std::uint64_t z = 0;

  /// The window where Ford's order of magnitude is asserted:
  /// y <= sqrt(x) and 2y <= z <= y^2.
  [[nodiscard]] bool in_ford_window() const;
};

/// Marks the multiples of every d in (y, z]. y >= 1 and x <= capacity.
[[nodiscard]] std::uint64_t H_count(const HQuery& q,
                                    std::uint64_t capacity = kDefaultBitsetCapacity);

/// #{a b : 1 <= a, b <= N}. Segmented above kSegmentThreshold entries.
[[nodiscard]] std::uint64_t table_count(std::uint64_t n);

/// #{m^2 - n^2 : 1 <= n < m <= N}, counted as the distinct products a b with
/// a < b of equal parity and a + b <= 2N (a = m - n, b = m + n).
[[nodiscard]] std::uint64_t square_diff_count(std::uint64_t n);

/// count (log N)^c (log2 N)^(3/2) / N^2 with clamped logs.
[[nodiscard]] double ford_ratio(std::uint64_t n, std::uint64_t count);

/// CSV: N,count,ford_ratio
void write_multtable_csv(std::ostream& out, std::span<const std::uint64_t> ns);

}  // namespace gaplab
