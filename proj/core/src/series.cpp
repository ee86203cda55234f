#include "gaplab/series.hpp"

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "gaplab/errors.hpp"
#include "json.hpp"

namespace gaplab {

namespace {

const TotientTable& ensure_phi(const TotientTable* phi, std::uint64_t k_max,
                               std::unique_ptr<TotientTable>& owned) {
  if (phi != nullptr && phi->limit() >= k_max) return *phi;
  owned = std::make_unique<TotientTable>(k_max);
  return *owned;
}

void check_cutoffs(std::uint64_t k_max, std::uint64_t b_max) {
  if (k_max == 0 || b_max == 0) throw InvalidArgument("series cutoffs K and B_max must be >= 1");
}

}  // namespace

double catlin_series_partial(const std::function<double(std::uint64_t)>& psi,
                             std::uint64_t k_max, std::uint64_t b_max,
                             const TotientTable* phi) {
  check_cutoffs(k_max, b_max);
  std::unique_ptr<TotientTable> owned;
  const TotientTable& table = ensure_phi(phi, k_max, owned);
  long double total = 0.0L;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    double best = 0.0;
    for (std::uint64_t b = 1; b <= b_max; ++b) {
      const std::uint64_t bk = b * k;
      best = std::max(best, psi(bk) / static_cast<double>(bk));
    }
    total += static_cast<long double>(table[k]) * best;
  }
  return static_cast<double>(total);
}

double thcat_series_partial(const FirstOccurrenceMap& first,
                            const std::function<double(std::uint64_t)>& eta,
                            bool eta_nonincreasing, std::uint64_t k_max, std::uint64_t b_max,
                            std::uint64_t l_max, const TotientTable* phi) {
  check_cutoffs(k_max, b_max);
  if (l_max == 0) throw InvalidArgument("series cutoff L_max must be >= 1");
  if (first.horizon() < l_max) {
    throw HorizonError("first-occurrence horizon " + std::to_string(first.horizon()) +
                       " is below L_max = " + std::to_string(l_max));
  }
  std::unique_ptr<TotientTable> owned;
  const TotientTable& table = ensure_phi(phi, k_max, owned);

  // suffix[l] = max_{l <= l' <= L_max} eta(l'), l = 1..L_max.
  std::vector<double> value(l_max + 2, 0.0);
  std::vector<double> suffix(l_max + 2, 0.0);
  for (std::uint64_t l = 1; l <= l_max; ++l) value[l] = eta(l);
  for (std::uint64_t l = l_max; l >= 1; --l) suffix[l] = std::max(value[l], suffix[l + 1]);

  long double total = 0.0L;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    double best = 0.0;
    for (std::uint64_t b = 1; b <= b_max; ++b) {
      const std::uint64_t bk = b * k;
      if (bk > first.max_difference()) break;
      const auto n = first.at(bk);
      if (!n || *n > l_max) continue;
      const double inner = eta_nonincreasing ? value[*n] : suffix[*n];
      best = std::max(best, inner / static_cast<double>(bk));
    }
    total += static_cast<long double>(table[k]) * best;
  }
  return static_cast<double>(total);
}

double thcat_series_partial(IntegerSequence& seq, const std::function<double(std::uint64_t)>& eta,
                            bool eta_nonincreasing, std::uint64_t k_max, std::uint64_t b_max,
                            std::uint64_t l_max) {
  check_cutoffs(k_max, b_max);
  const auto map = first_occurrence(seq.prefix(std::max<std::uint64_t>(l_max, 2)), k_max * b_max);
  return thcat_series_partial(map, eta, eta_nonincreasing, k_max, b_max, l_max);
}

std::string series_report_json(const SeriesReport& r) {
  nlohmann::ordered_json j;
  j["series"] = r.series;
  j["K"] = r.k_max;
  j["B_max"] = r.b_max;
  j["L_max"] = r.l_max;
  j["partial_sum"] = r.partial_sum;
  return j.dump(2) + "\n";
}

}  // namespace gaplab
