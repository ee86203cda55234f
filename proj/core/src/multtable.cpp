#include "gaplab/multtable.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "gaplab/envelopes.hpp"
#include "gaplab/errors.hpp"

namespace gaplab {

namespace {

class Bitset {
 public:
  explicit Bitset(std::uint64_t bits) : words_(bits / 64 + 1, 0) {}
  void set(std::uint64_t i) { words_[i >> 6U] |= std::uint64_t{1} << (i & 63U); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }
  [[nodiscard]] std::uint64_t count() const {
    std::uint64_t c = 0;
    for (const auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
  }

 private:
  std::vector<std::uint64_t> words_;
};

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return a / b + (a % b != 0); }

// Counts distinct values a*b over pairs with a in [1, a_max] and b in
// [b_lo(a), b_hi(a)] stepping by `step(a)`, sweeping the value range
// [1, v_max] in segments of `segment` bits.
template <typename Range>
std::uint64_t count_distinct_products(std::uint64_t a_max, std::uint64_t v_max,
                                      std::uint64_t segment, Range range) {
  Bitset bits(std::min(segment, v_max + 1));
  std::uint64_t total = 0;
  for (std::uint64_t seg_lo = 0; seg_lo <= v_max; seg_lo += segment) {
    const std::uint64_t seg_hi = std::min(v_max, seg_lo + segment - 1);
    bits.clear();
    for (std::uint64_t a = 1; a <= a_max; ++a) {
      auto [b_lo, b_hi, step] = range(a);
      if (b_lo > b_hi) continue;
      // First b with a*b >= seg_lo, aligned to the stride.
      std::uint64_t first = std::max(b_lo, ceil_div(seg_lo, a));
      if (step == 2 && ((first - b_lo) & 1U) != 0) ++first;
      const std::uint64_t last = std::min(b_hi, seg_hi / a);
      for (std::uint64_t b = first; b <= last; b += step) bits.set(a * b - seg_lo);
    }
    total += bits.count();
  }
  return total;
}

struct BRange {
  std::uint64_t lo, hi, step;
};

}  // namespace

bool HQuery::in_ford_window() const {
  const auto yy = static_cast<unsigned __int128>(y) * y;
  return yy <= x && 2 * y <= z && static_cast<unsigned __int128>(z) <= yy;
}

std::uint64_t H_count(const HQuery& q, std::uint64_t capacity) {
  if (q.y < 1) throw InvalidArgument("H(x, y, z) requires y >= 1");
  if (q.x > capacity) {
    throw CapacityError("H(x, y, z): x = " + std::to_string(q.x) + " exceeds bitset capacity");
  }
  if (q.z <= q.y || q.x == 0) return 0;
  Bitset bits(q.x + 1);
  const std::uint64_t z = std::min(q.z, q.x);
  for (std::uint64_t d = q.y + 1; d <= z; ++d) {
    for (std::uint64_t m = d; m <= q.x; m += d) bits.set(m);
  }
  return bits.count();
}

std::uint64_t table_count(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("table_count requires N >= 1");
  if (n > (std::uint64_t{1} << 31)) throw CapacityError("table_count: N too large");
  const std::uint64_t v_max = n * n;
  const std::uint64_t segment = v_max + 1 > kSegmentThreshold ? kSegmentBits : v_max + 1;
  // a <= b suffices: the product set is symmetric.
  return count_distinct_products(n, v_max, segment, [n](std::uint64_t a) {
    return BRange{a, n, 1};
  });
}

std::uint64_t square_diff_count(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("square_diff_count requires N >= 1");
  if (n > (std::uint64_t{1} << 31)) throw CapacityError("square_diff_count: N too large");
  if (n == 1) return 0;
  const std::uint64_t v_max = n * n - 1;
  const std::uint64_t segment = v_max + 1 > kSegmentThreshold ? kSegmentBits : v_max + 1;
  return count_distinct_products(n, v_max, segment, [n](std::uint64_t a) {
    // b > a with b ≡ a (mod 2) and a + b <= 2N.
    return BRange{a + 2, 2 * n - a, 2};
  });
}

double ford_ratio(std::uint64_t n, std::uint64_t count) {
  const double c = multiplication_table_constant();
  const double dn = static_cast<double>(n);
  return static_cast<double>(count) * std::pow(clamped_iterated_log(dn, 1), c) *
         std::pow(clamped_iterated_log(dn, 2), 1.5) / (dn * dn);
}

void write_multtable_csv(std::ostream& out, std::span<const std::uint64_t> ns) {
  out << "N,count,ford_ratio\r\n";
  char buf[64];
  for (const auto n : ns) {
    const std::uint64_t count = table_count(n);
    std::snprintf(buf, sizeof buf, "%.12g", ford_ratio(n, count));
    out << n << ',' << count << ',' << buf << "\r\n";
  }
}

}  // namespace gaplab
