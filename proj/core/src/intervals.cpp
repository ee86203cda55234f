#include "gaplab/intervals.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "gaplab/errors.hpp"

namespace gaplab {

namespace {

using u128 = unsigned __int128;

const Fraction kZero{0, 1};
const Fraction kOne{1, 1};

// (hi - lo) as an exact rational.
Rational length(const Interval& iv) {
  return iv.hi.to_rational() - iv.lo.to_rational();
}

}  // namespace

Fraction::Fraction(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
  if (den == 0) throw InvalidArgument("fraction with zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  num_ /= g;
  den_ /= g;
}

Fraction Fraction::dyadic(std::uint64_t raw) {
  if (raw == 0) return Fraction{0, 1};
  // raw / 2^64 in lowest terms; the denominator 2^(64 - tz) fits when tz >= 1.
  const int tz = __builtin_ctzll(raw);
  if (tz == 0) throw InvalidArgument("odd dyadic raw / 2^64 needs a 65-bit denominator");
  return Fraction{raw >> tz, std::uint64_t{1} << (64 - tz)};
}

Rational Fraction::to_rational() const {
  return Rational(boost::multiprecision::cpp_int(num_), boost::multiprecision::cpp_int(den_));
}

double Fraction::to_double() const {
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Fraction::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
  const u128 lhs = static_cast<u128>(a.num_) * b.den_;
  const u128 rhs = static_cast<u128>(b.num_) * a.den_;
  return lhs <=> rhs;
}

IntervalUnion IntervalUnion::from_intervals(std::vector<Interval> intervals) {
  std::vector<Interval> clipped;
  clipped.reserve(intervals.size());
  for (auto iv : intervals) {
    if (iv.lo < kZero) iv.lo = kZero;
    if (iv.hi > kOne) iv.hi = kOne;
    if (iv.lo < iv.hi) clipped.push_back(iv);
  }
  std::sort(clipped.begin(), clipped.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  IntervalUnion u;
  for (const auto& iv : clipped) {
    if (!u.parts_.empty() && iv.lo <= u.parts_.back().hi) {
      if (iv.hi > u.parts_.back().hi) u.parts_.back().hi = iv.hi;
    } else {
      u.parts_.push_back(iv);
    }
  }
  return u;
}

Rational IntervalUnion::measure() const {
  if (parts_.empty()) return Rational(0);
  // Fast path: if the lcm of all endpoint denominators fits in 64 bits,
  // every endpoint is an integer multiple of 1/L and the sum fits in 128 bits.
  std::uint64_t lcm = 1;
  bool fits = true;
  for (const auto& iv : parts_) {
    for (const auto d : {iv.lo.den(), iv.hi.den()}) {
      const std::uint64_t step = d / std::gcd(lcm, d);
      if (step != 0 && lcm > ~std::uint64_t{0} / step) {
        fits = false;
        break;
      }
      lcm *= step;
    }
    if (!fits) break;
  }
  if (fits) {
    u128 total = 0;
    for (const auto& iv : parts_) {
      total += static_cast<u128>(iv.hi.num()) * (lcm / iv.hi.den()) -
               static_cast<u128>(iv.lo.num()) * (lcm / iv.lo.den());
    }
    boost::multiprecision::cpp_int t = static_cast<std::uint64_t>(total >> 64);
    t <<= 64;
    t += static_cast<std::uint64_t>(total);
    return Rational(t, boost::multiprecision::cpp_int(lcm));
  }
  Rational total = 0;
  for (const auto& iv : parts_) total += length(iv);
  return total;
}

bool IntervalUnion::contains(const Fraction& x) const {
  const auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                                   [](const Fraction& v, const Interval& iv) { return v < iv.lo; });
  if (it == parts_.begin()) return false;
  return x <= std::prev(it)->hi;
}

bool IntervalUnion::contains(double x) const {
  const auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                                   [](double v, const Interval& iv) { return v < iv.lo.to_double(); });
  if (it == parts_.begin()) return false;
  return x <= std::prev(it)->hi.to_double();
}

Rational measure(const IntervalUnion& u) { return u.measure(); }

IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<Interval> out;
  const auto pa = a.components();
  const auto pb = b.components();
  std::size_t i = 0, j = 0;
  while (i < pa.size() && j < pb.size()) {
    const Fraction lo = std::max(pa[i].lo, pb[j].lo);
    const Fraction hi = std::min(pa[i].hi, pb[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (pa[i].hi < pb[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalUnion::from_intervals(std::move(out));
}

IntervalUnion unite(std::span<const IntervalUnion> unions) {
  std::vector<Interval> all;
  for (const auto& u : unions) {
    all.insert(all.end(), u.components().begin(), u.components().end());
  }
  return IntervalUnion::from_intervals(std::move(all));
}

}  // namespace gaplab
