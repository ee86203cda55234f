#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

#include "gaplab/diffstats.hpp"
#include "gaplab/numtheory.hpp"

namespace gaplab {

/// Default truncations of the sups and sums below.
inline constexpr std::uint64_t kDefaultSeriesK = 10'000;
inline constexpr std::uint64_t kDefaultSeriesBMax = 1'000;

/// sum_{k <= K} phi(k) max_{1 <= b <= B_max} psi(bk) / (bk).
///
/// A truncation of the Catlin-type series, hence a lower bound of it.
/// `phi` must cover 1..K; a table is built when it does not.
[[nodiscard]] double catlin_series_partial(const std::function<double(std::uint64_t)>& psi,
                                           std::uint64_t k_max, std::uint64_t b_max,
                                           const TotientTable* phi = nullptr);

/// sum_{k <= K} phi(k) max_{b <= B_max} [ max_{N(bk) <= l <= L_max} eta(l) ] / (bk)
///
/// Keys that never occur (N(bk) = infinity) contribute zero, as does an empty
/// range N(bk) > L_max. With `eta_nonincreasing` the inner max is eta(N(bk)).
/// Throws HorizonError if the map's horizon is below L_max or a needed key
/// lies beyond its key limit.
[[nodiscard]] double thcat_series_partial(const FirstOccurrenceMap& first,
                                          const std::function<double(std::uint64_t)>& eta,
                                          bool eta_nonincreasing, std::uint64_t k_max,
                                          std::uint64_t b_max, std::uint64_t l_max,
                                          const TotientTable* phi = nullptr);

/// Convenience overload building the first-occurrence map with horizon L_max
/// and key limit K * B_max.
[[nodiscard]] double thcat_series_partial(IntegerSequence& seq,
                                          const std::function<double(std::uint64_t)>& eta,
                                          bool eta_nonincreasing, std::uint64_t k_max,
                                          std::uint64_t b_max, std::uint64_t l_max);

struct SeriesReport {
  std::string series;
  std::uint64_t k_max = 0;
  std::uint64_t b_max = 0;
  std::uint64_t l_max = 0;
  double partial_sum = 0.0;
};

/// {"series": ..., "K": ..., "B_max": ..., "L_max": ..., "partial_sum": ...}
[[nodiscard]] std::string series_report_json(const SeriesReport& r);

}  // namespace gaplab
