#include "gaplab/diffstats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "gaplab/errors.hpp"
#include "gaplab/ntt.hpp"

namespace gaplab {

namespace {

// Sort-and-count route keeps at most this many pairwise differences.
constexpr std::uint64_t kMaxPairBuffer = std::uint64_t{1} << 27;

DiffStats from_sorted_diffs(std::size_t n, std::vector<std::uint64_t>& all) {
  DiffStats s;
  s.n = n;
  std::sort(all.begin(), all.end());
  u128 sum_sq = 0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    s.diffs.push_back(all[i]);
    s.reps.push_back(static_cast<std::uint32_t>(j - i));
    sum_sq += static_cast<u128>(j - i) * (j - i);
    i = j;
  }
  s.c_plus = s.diffs.size();
  s.c_full = 2 * s.c_plus + 1;
  s.energy = static_cast<u128>(n) * n + 2 * sum_sq;
  return s;
}

DiffStats pairs_sort_count(std::span<const Term> terms) {
  const std::size_t n = terms.size();
  std::vector<std::uint64_t> all;
  all.reserve(n * (n - 1) / 2);
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t k = 0; k < m; ++k) all.push_back(terms[m] - terms[k]);
  }
  return from_sorted_diffs(n, all);
}

std::size_t transform_length(std::uint64_t span) {
  std::size_t len = 1;
  while (len < 2 * span + 1) len <<= 1U;
  return len;
}

}  // namespace

std::uint64_t DiffStats::rep(std::int64_t u) const {
  if (u == 0) return n;
  const std::uint64_t key = u < 0 ? static_cast<std::uint64_t>(-u) : static_cast<std::uint64_t>(u);
  const auto it = std::lower_bound(diffs.begin(), diffs.end(), key);
  if (it == diffs.end() || *it != key) return 0;
  return reps[static_cast<std::size_t>(it - diffs.begin())];
}

void require_strictly_increasing(std::span<const Term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i] == 0 || terms[i] > kMaxTerm) {
      throw InvalidArgument("terms must lie in [1, 2^63-1]");
    }
    if (i > 0 && terms[i] <= terms[i - 1]) {
      throw InvalidArgument("terms must be strictly increasing");
    }
  }
}

DiffStats rep_counts_direct(std::span<const Term> terms, std::size_t cap) {
  if (terms.empty()) throw InvalidArgument("rep counts need at least one term");
  if (terms.size() > cap) {
    throw CapacityError("direct rep counts limited to N <= " + std::to_string(cap));
  }
  require_strictly_increasing(terms);
  return pairs_sort_count(terms);
}

DiffStats rep_counts_fast(std::span<const Term> terms, std::uint64_t capacity) {
  if (terms.empty()) throw InvalidArgument("rep counts need at least one term");
  require_strictly_increasing(terms);
  const std::uint64_t span = terms.back() - terms.front();
  if (span > capacity) {
    throw CapacityError("a_N - a_1 = " + std::to_string(span) +
                        " exceeds convolution capacity " + std::to_string(capacity));
  }
  if (terms.size() >= ntt::kModulus) throw CapacityError("too many terms for the modulus");
  std::vector<std::uint32_t> data(transform_length(span), 0);
  for (const Term t : terms) data[t - terms.front()] = 1;
  ntt::autocorrelate_inplace(data);

  DiffStats s;
  s.n = terms.size();
  u128 sum_sq = 0;
  for (std::uint64_t u = 1; u <= span; ++u) {
    const std::uint32_t r = data[u];
    if (r == 0) continue;
    if (r > terms.size()) throw Error("transform produced an out-of-range count");
    s.diffs.push_back(u);
    s.reps.push_back(r);
    sum_sq += static_cast<u128>(r) * r;
  }
  if (data[0] != terms.size()) throw Error("transform produced rep(0) != N");
  s.c_plus = s.diffs.size();
  s.c_full = 2 * s.c_plus + 1;
  s.energy = static_cast<u128>(s.n) * s.n + 2 * sum_sq;
  return s;
}

DiffStats rep_counts(std::span<const Term> terms) {
  if (terms.empty()) throw InvalidArgument("rep counts need at least one term");
  require_strictly_increasing(terms);
  const std::uint64_t n = terms.size();
  const std::uint64_t pairs = n * (n - 1) / 2;
  const std::uint64_t span = terms.back() - terms.front();
  const bool transform_ok = span <= kDefaultConvolutionCapacity;
  const bool pairs_ok = pairs <= kMaxPairBuffer;
  if (!transform_ok && !pairs_ok) {
    throw CapacityError("rep counts: both the transform and the pair buffer exceed capacity");
  }
  // Rough operation counts: L log L for the transform (two passes), and
  // pairs * log(pairs) for sort-and-count.
  const double len = static_cast<double>(transform_length(span));
  const double transform_cost = 3.0 * len * std::log2(len + 1.0);
  const double pair_cost = static_cast<double>(pairs) * std::log2(static_cast<double>(pairs) + 2.0);
  if (transform_ok && (!pairs_ok || transform_cost <= pair_cost)) {
    return rep_counts_fast(terms);
  }
  return pairs_sort_count(terms);
}

DifferenceTracker::DifferenceTracker(bool track_energy, std::uint64_t key_capacity)
    : track_energy_(track_energy), key_capacity_(key_capacity) {}

void DifferenceTracker::ensure_capacity(std::uint64_t max_diff) {
  if (max_diff > key_capacity_) {
    throw CapacityError("difference " + std::to_string(max_diff) +
                        " exceeds difference-table capacity " + std::to_string(key_capacity_));
  }
  const std::size_t words = static_cast<std::size_t>(max_diff / 64 + 1);
  if (bits_.size() < words) bits_.resize(std::max<std::size_t>(words, bits_.size() * 2), 0);
  if (track_energy_ && rep_.size() <= max_diff) {
    rep_.resize(std::max<std::size_t>(max_diff + 1, rep_.size() * 2), 0);
  }
}

bool DifferenceTracker::contains(std::uint64_t u) const {
  if (u == 0) return !terms_.empty();
  const std::size_t w = static_cast<std::size_t>(u >> 6U);
  return w < bits_.size() && ((bits_[w] >> (u & 63U)) & 1U) != 0;
}

std::vector<DiffTrajectoryRow> diff_trajectory(std::span<const Term> terms, bool track_energy) {
  require_strictly_increasing(terms);
  DifferenceTracker tracker(track_energy);
  std::vector<DiffTrajectoryRow> rows;
  rows.reserve(terms.size());
  for (const Term t : terms) {
    tracker.add(t);
    rows.push_back({tracker.size(), tracker.c_plus(), tracker.c_full(), tracker.energy()});
  }
  return rows;
}

std::optional<std::uint32_t> FirstOccurrenceMap::at(std::uint64_t k) const {
  if (k == 0 || k > max_diff_) return std::nullopt;
  if (k > key_limit_) {
    throw HorizonError("first-occurrence key " + std::to_string(k) +
                       " is beyond the computed key limit " + std::to_string(key_limit_));
  }
  const std::uint32_t v = first_[k];
  if (v == 0) return std::nullopt;
  return v;
}

FirstOccurrenceMap first_occurrence(std::span<const Term> terms, std::uint64_t key_limit) {
  if (terms.size() < 2) throw InvalidArgument("first_occurrence needs N_max >= 2");
  if (terms.size() >= (std::size_t{1} << 32)) throw CapacityError("horizon too large");
  require_strictly_increasing(terms);
  FirstOccurrenceMap map;
  map.horizon_ = terms.size();
  map.max_diff_ = terms.back() - terms.front();
  map.key_limit_ = key_limit == 0 ? map.max_diff_ : std::min(key_limit, map.max_diff_);
  if (map.key_limit_ > kDefaultKeyCapacity / 4) {
    throw CapacityError("first-occurrence table of " + std::to_string(map.key_limit_) +
                        " keys exceeds capacity");
  }
  map.first_.assign(map.key_limit_ + 1, 0);
  for (std::size_t m = 1; m < terms.size(); ++m) {
    const auto label = static_cast<std::uint32_t>(m + 1);
    for (std::size_t k = m; k-- > 0;) {
      const std::uint64_t u = terms[m] - terms[k];
      if (u > map.key_limit_) break;  // differences grow as k decreases
      if (map.first_[u] == 0) {
        map.first_[u] = label;
        ++map.count_;
      }
    }
  }
  return map;
}

FirstOccurrenceMap first_occurrence(IntegerSequence& seq, std::size_t n_max,
                                    std::uint64_t key_limit) {
  return first_occurrence(seq.prefix(n_max), key_limit);
}

std::vector<std::uint64_t> z_enumeration(std::span<const Term> terms) {
  if (terms.size() < 2) throw InvalidArgument("z_enumeration needs N_max >= 2");
  require_strictly_increasing(terms);
  DifferenceTracker tracker;
  std::vector<std::uint64_t> z;
  std::vector<std::uint64_t> fresh;
  for (const Term t : terms) {
    fresh.clear();
    tracker.add(t, [&](std::uint64_t u) { fresh.push_back(u); });
    std::sort(fresh.begin(), fresh.end());
    z.insert(z.end(), fresh.begin(), fresh.end());
  }
  return z;
}

std::vector<std::uint64_t> z_enumeration(IntegerSequence& seq, std::size_t n_max) {
  return z_enumeration(seq.prefix(n_max));
}

double gcd_sum(std::span<const std::uint64_t> values) {
  if (values.empty()) throw InvalidArgument("gcd_sum needs a nonempty list");
  long double total = 0.0L;
  for (std::size_t m = 0; m < values.size(); ++m) {
    total += 1.0L;  // diagonal: gcd(v, v) / v
    long double row = 0.0L;
    for (std::size_t n = m + 1; n < values.size(); ++n) {
      const std::uint64_t g = std::gcd(values[m], values[n]);
      const u128 prod = static_cast<u128>(values[m]) * values[n];
      row += static_cast<long double>(g) / std::sqrt(static_cast<long double>(prod));
    }
    total += 2.0L * row;
  }
  return static_cast<double>(total);
}

std::string to_string_u128(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

void write_diffstats_csv(std::ostream& out, std::span<const DiffTrajectoryRow> rows) {
  out << "N,C_plus,C_full,E,ratio_E_lower,ratio_E_upper,C_over_N_log_N\r\n";
  char buf[64];
  for (const auto& r : rows) {
    const long double n = static_cast<long double>(r.n);
    const long double c = static_cast<long double>(r.c_full);
    const long double e = static_cast<long double>(r.energy);
    const long double n_log_n = n * std::max(1.0L, std::log(n));
    out << r.n << ',' << r.c_plus << ',' << r.c_full << ',' << to_string_u128(r.energy) << ',';
    std::snprintf(buf, sizeof buf, "%.12Lg", e * c / (n * n * n * n));
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.12Lg", e / (n * n * c));
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.12Lg", c / n_log_n);
    out << buf << "\r\n";
  }
}

}  // namespace gaplab
