#include <cstdint>
#include <vector>

#include "doctest.h"
#include "gaplab/errors.hpp"
#include "gaplab/intervals.hpp"
#include "gaplab/rng.hpp"

using namespace gaplab;

namespace {

IntervalUnion random_union(SplitMix64& rng, std::uint64_t den) {
  std::vector<Interval> parts;
  const std::size_t count = 1 + rng.below(8);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t a = rng.below(den + 1), b = rng.below(den + 1);
    if (a > b) std::swap(a, b);
    parts.push_back({Fraction{a, den}, Fraction{b, den}});
  }
  return IntervalUnion::from_intervals(parts);
}

// Measure by counting cells of a 1/den grid; exact for unions with
// endpoints on that grid.
Rational grid_measure(const IntervalUnion& u, std::uint64_t den) {
  std::uint64_t cells = 0;
  for (std::uint64_t i = 0; i < den; ++i) {
    cells += u.contains(Fraction{2 * i + 1, 2 * den});
  }
  return Rational(boost::multiprecision::cpp_int(cells), boost::multiprecision::cpp_int(den));
}

}  // namespace

TEST_SUITE("intervals") {
  TEST_CASE("fractions") {
    CHECK(Fraction(2, 4) == Fraction(1, 2));
    CHECK(Fraction(1, 3) < Fraction(1, 2));
    CHECK(Fraction(0, 7) == Fraction(0, 1));
    CHECK(Fraction(~std::uint64_t{0} - 1, ~std::uint64_t{0}) < Fraction(1, 1));
    CHECK(Fraction::dyadic(std::uint64_t{1} << 63) == Fraction(1, 2));
    CHECK(Fraction(3, 8).to_string() == "3/8");
    CHECK_THROWS_AS(Fraction(1, 0), InvalidArgument);
  }

  TEST_CASE("merge and clip") {
    const auto u = IntervalUnion::from_intervals({{Fraction(1, 2), Fraction(3, 4)},
                                                  {Fraction(0, 1), Fraction(1, 4)},
                                                  {Fraction(1, 4), Fraction(1, 3)},
                                                  {Fraction(2, 3), Fraction(1, 1)}});
    REQUIRE(u.size() == 2);
    CHECK(u.components()[0] == Interval{Fraction(0, 1), Fraction(1, 3)});
    CHECK(u.components()[1] == Interval{Fraction(1, 2), Fraction(1, 1)});
    CHECK(u.measure() == Rational(5, 6));
    CHECK(u.contains(0.9));
    CHECK_FALSE(u.contains(0.4));
  }

  TEST_CASE("measure against grid counting") {
    SplitMix64 rng(21);
    for (int i = 0; i < 100; ++i) {
      const std::uint64_t den = 1 + rng.below(500);
      const auto u = random_union(rng, den);
      const auto v = random_union(rng, den);
      REQUIRE(u.measure() == grid_measure(u, den));
      const auto w = intersect(u, v);
      REQUIRE(w.measure() == grid_measure(w, den));
      const std::vector<IntervalUnion> both{u, v};
      const auto s = unite(both);
      REQUIRE(s.measure() == grid_measure(s, den));
      // Inclusion-exclusion.
      REQUIRE(s.measure() + w.measure() == u.measure() + v.measure());
    }
  }

  TEST_CASE("intersection laws") {
    SplitMix64 rng(5);
    for (int i = 0; i < 100; ++i) {
      const auto u = random_union(rng, 97);
      const auto v = random_union(rng, 89);
      REQUIRE(intersect(u, u) == u);
      const Rational m = measure(intersect(u, v));
      REQUIRE(m <= u.measure());
      REQUIRE(m <= v.measure());
    }
  }

  TEST_CASE("measure with a large common denominator") {
    const std::uint64_t big = (std::uint64_t{1} << 62) + 1;
    const auto u = IntervalUnion::from_intervals(
        {{Fraction(0, 1), Fraction(1, big)}, {Fraction(1, 3), Fraction(1, 2)}});
    CHECK(u.measure() == Rational(1, boost::multiprecision::cpp_int(big)) + Rational(1, 6));
  }
}
