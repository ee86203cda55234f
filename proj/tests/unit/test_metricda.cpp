#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "gaplab/errors.hpp"
#include "gaplab/metricda.hpp"
#include "gaplab/numtheory.hpp"
#include "gaplab/rng.hpp"
#include "unit/oracles.hpp"

using namespace gaplab;

TEST_SUITE("metricda") {
  TEST_CASE("S_k measures") {
    CHECK(build_S(4, Fraction(1, 10), false).measure() == Rational(1, 5));
    CHECK(build_S(4, Fraction(1, 10), true).measure() == Rational(1, 10));
    CHECK(build_S(1, Fraction(2, 5), false).measure() == Rational(4, 5));
    CHECK_THROWS_AS((void)build_S(3, Fraction(1, 2), false), InvalidArgument);
  }

  TEST_CASE("S_k measure identities for k <= 300") {
    for (std::uint64_t k = 1; k <= 300; ++k) {
      for (const Fraction psi : {Fraction(1, 1024), Fraction(1, 7), Fraction(2, 5)}) {
        const Rational two_psi = 2 * psi.to_rational();
        REQUIRE(build_S(k, psi, false).measure() == two_psi);
        REQUIRE(build_S(k, psi, true).measure() == two_psi * totient(k) / k);
      }
    }
  }

  TEST_CASE("S_4 and S_6 overlap against a 10^6-point grid") {
    const auto u = intersect(build_S(4, Fraction(1, 10), false), build_S(6, Fraction(1, 10), false));
    const int grid = 1'000'000;
    int inside = 0;
    for (int i = 0; i < grid; ++i) inside += u.contains((i + 0.5) / grid);
    CHECK(std::abs(u.measure().convert_to<double>() - static_cast<double>(inside) / grid) < 1e-5);
  }

  TEST_CASE("overlap D and P by hand") {
    // z = 5, 7 coprime; psi = 1/10 each: D = max(5, 7)/10 / 1 = 0.7 < 1 so P = 0.
    auto d = overlap_diagnostics(5, 7, Fraction(1, 10), Fraction(1, 10), 100);
    CHECK(d.D == doctest::Approx(0.7));
    CHECK(d.P == 0.0);

    // z = 30, 77, psi = 1/5: D = 77/5 = 15.4; primes of 30 * 77 above 15.4 and <= 100: none.
    d = overlap_diagnostics(30, 77, Fraction(1, 5), Fraction(1, 5), 100);
    CHECK(d.D == doctest::Approx(15.4));
    CHECK(d.P == doctest::Approx(1.0));

    // z = 6, 38 = 2 * 19, psi = 1/4: g = 2, D = 38/4/2 = 4.75; primes of 3 * 19 above 4.75: 19.
    d = overlap_diagnostics(6, 38, Fraction(1, 4), Fraction(1, 4), 100);
    CHECK(d.D == doctest::Approx(4.75));
    CHECK(d.P == doctest::Approx(1.0 + 1.0 / 19));
    d = overlap_diagnostics(6, 38, Fraction(1, 4), Fraction(1, 4), 10);
    CHECK(d.P == doctest::Approx(1.0));

    // z_m | z_n with equal psi.
    d = overlap_diagnostics(3, 12, Fraction(1, 3), Fraction(1, 3), 100);
    CHECK(d.D == doctest::Approx(12.0 / 3 / 3));
    CHECK(d.lhs_measure <= d.measure_m);
  }

  TEST_CASE("overlap ratio is finite on random pairs") {
    SplitMix64 rng(17);
    for (int i = 0; i < 100; ++i) {
      const std::uint64_t zm = 1 + rng.below(300);
      std::uint64_t zn = 1 + rng.below(300);
      if (zn == zm) ++zn;
      const Fraction pm(1 + rng.below(40), 100), pn(1 + rng.below(40), 100);
      const auto d = overlap_diagnostics(zm, zn, pm, pn, 1000);
      REQUIRE(std::isfinite(d.ratio));
      // Direct prime loop for P.
      double p_ref = 0.0;
      if (d.D >= 1.0) {
        p_ref = 1.0;
        const std::uint64_t g = std::gcd(zm, zn);
        const std::uint64_t r = zm / g * (zn / g);
        for (std::uint64_t p : oracle::sieve(1000)) {
          if (r % p == 0 && static_cast<double>(p) > d.D) p_ref *= 1.0 + 1.0 / static_cast<double>(p);
        }
      }
      REQUIRE(d.P == doctest::Approx(p_ref));
    }
  }

  TEST_CASE("Chung-Erdos") {
    const auto u = build_S(5, Fraction(1, 20), false);
    const std::vector<IntervalUnion> one{u};
    auto r = chung_erdos_check(one);
    CHECK(r.lhs == r.rhs);
    CHECK(r.holds);

    const auto a = IntervalUnion::from_intervals({{Fraction(0, 1), Fraction(1, 5)}});
    const auto b = IntervalUnion::from_intervals({{Fraction(1, 2), Fraction(7, 10)}});
    const std::vector<IntervalUnion> disjoint{a, b};
    r = chung_erdos_check(disjoint);
    CHECK(r.lhs == Rational(2, 5));
    CHECK(r.rhs == Rational(2, 5));
    CHECK(r.holds);

    SplitMix64 rng(3);
    for (int fam = 0; fam < 30; ++fam) {
      std::vector<IntervalUnion> sets;
      const std::size_t count = 2 + rng.below(6);
      for (std::size_t i = 0; i < count; ++i) {
        sets.push_back(build_S(1 + rng.below(40), Fraction(1 + rng.below(49), 100), rng.below(2)));
      }
      REQUIRE(chung_erdos_check(sets).holds);
    }
  }

  TEST_CASE("D statistic") {
    const std::vector<std::int64_t> z{3, -5, 8, 7};
    const AlphaFixed a = AlphaFixed::from_rational(1, 3);
    CHECK(D_statistic(z, 1e30, a) == 0);
    CHECK(D_statistic(z, 0.5, a) == 4);
    // alpha ~ 1/3: ||3 alpha|| ~ 0, the rest are about 1/3.
    CHECK(D_statistic(z, 10, a) == 1);
    CHECK_THROWS_AS((void)D_statistic(z, 0.0, a), InvalidArgument);
  }
}
