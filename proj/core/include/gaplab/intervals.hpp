#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gaplab {

/// Exact rational used for measures and sums of measures.
using Rational = boost::multiprecision::cpp_rational;

/// A nonnegative fraction num/den with 64-bit parts, kept in lowest terms.
/// Ordering is exact (128-bit cross multiplication).
class Fraction {
 public:
  constexpr Fraction() = default;
  Fraction(std::uint64_t num, std::uint64_t den);

  [[nodiscard]] std::uint64_t num() const { return num_; }
  [[nodiscard]] std::uint64_t den() const { return den_; }
  [[nodiscard]] Rational to_rational() const;
  [[nodiscard]] double to_double() const;
  [[nodiscard]] std::string to_string() const;

  /// The dyadic raw / 2^64.
  static Fraction dyadic(std::uint64_t raw);

  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b);
  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

struct Interval {
  Fraction lo;
  Fraction hi;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A finite union of subintervals of [0, 1], stored as sorted, disjoint,
/// nonempty components. Open/closed endpoints are not tracked; they do not
/// affect Lebesgue measure.
class IntervalUnion {
 public:
  IntervalUnion() = default;

  /// Builds the union of arbitrary intervals (clipped to [0, 1], empty
  /// ones dropped, overlapping or touching ones merged).
  static IntervalUnion from_intervals(std::vector<Interval> intervals);

  [[nodiscard]] std::span<const Interval> components() const { return parts_; }
  [[nodiscard]] bool empty() const { return parts_.empty(); }
  [[nodiscard]] std::size_t size() const { return parts_.size(); }

  /// Exact Lebesgue measure.
  [[nodiscard]] Rational measure() const;

  /// Whether x lies in the closure of some component.
  [[nodiscard]] bool contains(const Fraction& x) const;
  [[nodiscard]] bool contains(double x) const;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<Interval> parts_;
};

/// Exact Lebesgue measure of a union.
[[nodiscard]] Rational measure(const IntervalUnion& u);

/// Exact intersection by a sorted two-pointer sweep.
[[nodiscard]] IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b);

/// Union of several unions by a merge sweep.
[[nodiscard]] IntervalUnion unite(std::span<const IntervalUnion> unions);

}  // namespace gaplab
