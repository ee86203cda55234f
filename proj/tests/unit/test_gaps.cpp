#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "doctest.h"
#include "gaplab/errors.hpp"
#include "gaplab/gaps.hpp"
#include "gaplab/rng.hpp"
#include "unit/oracles.hpp"

using namespace gaplab;

TEST_SUITE("gaps") {
  TEST_CASE("three points at alpha = 0.3") {
    const std::vector<Term> a{1, 2, 3};
    const AlphaFixed alpha = AlphaFixed::from_rational(3, 10);
    const auto r = min_gap_sorted(a, alpha);
    CHECK_FALSE(r.degenerate);
    // Exact: ||0.3|| and the nearest dyadic differ by at most 2^-64.
    using boost::multiprecision::cpp_rational;
    using boost::multiprecision::cpp_int;
    const cpp_rational got(cpp_int(r.delta.raw), cpp_int(1) << 64);
    CHECK(abs(got - cpp_rational(3, 10)) <= cpp_rational(1, cpp_int(1) << 60));
    CHECK(r == min_gap_bruteforce(a, alpha));
  }

  TEST_CASE("exact half is degenerate") {
    const std::vector<Term> a{1, 2, 3};
    const auto r = min_gap_sorted(a, AlphaFixed{std::uint64_t{1} << 63});
    CHECK(r.delta.raw == 0);
    CHECK(r.degenerate);
    CHECK(min_gap_bruteforce(a, AlphaFixed{std::uint64_t{1} << 63}).degenerate);
  }

  TEST_CASE("single pair") {
    SplitMix64 rng(1);
    const std::vector<Term> a{17, 1000};
    for (int i = 0; i < 100; ++i) {
      const AlphaFixed alpha{rng.next()};
      CHECK(min_gap_sorted(a, alpha).delta == torus_norm(983, alpha));
      CHECK(min_gap_bruteforce(a, alpha).delta == torus_norm(983, alpha));
    }
  }

  TEST_CASE("sorted sweep equals the pair oracle") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 2 + rng.below(200);
      const auto a = oracle::random_set(rng, n, Term{1} << (10 + rng.below(40)));
      const AlphaFixed alpha = sample_alpha(rng);
      const auto r = min_gap_sorted(a, alpha);
      REQUIRE(r.delta.raw == oracle::min_gap_pairs(a, alpha.numerator));
      REQUIRE(r == min_gap_bruteforce(a, alpha));
    }
  }

  TEST_CASE("brute force cap") {
    std::vector<Term> a(3000);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = i + 1;
    CHECK_THROWS_AS((void)min_gap_bruteforce(a, AlphaFixed{12345}), CapacityError);
  }

  TEST_CASE("trajectory equals per-N recomputation") {
    SplitMix64 rng(4);
    IntegerSequence sq(SequenceSpec::squares());
    auto terms = sq.prefix(300);
    for (int trial = 0; trial < 5; ++trial) {
      const AlphaFixed alpha = sample_alpha(rng);
      const auto traj = min_gap_trajectory(terms, alpha);
      REQUIRE(traj.size() == 299);
      for (std::size_t n = 2; n <= 300; ++n) {
        REQUIRE(traj.at(n) == min_gap_sorted(terms.first(n), alpha).delta);
        if (n > 2) REQUIRE(traj.at(n) <= traj.at(n - 1));
      }
    }
  }

  TEST_CASE("natural numbers: minimum of ||k alpha|| over k < N") {
    SplitMix64 rng(8);
    IntegerSequence nat(SequenceSpec::natural());
    auto terms = nat.prefix(2000);
    const AlphaFixed alpha = sample_alpha(rng);
    const auto traj = min_gap_trajectory(terms, alpha);
    std::uint64_t best = ~std::uint64_t{0};
    for (std::size_t n = 2; n <= 2000; ++n) {
      best = std::min(best, oracle::torus_norm_raw(n - 1, alpha.numerator));
      REQUIRE(traj.at(n).raw == best);
    }
  }

  TEST_CASE("degenerate trajectory position") {
    // alpha = 1/4: 1 and 5 coincide mod 1.
    const std::vector<Term> a{1, 2, 5, 7};
    const auto traj = min_gap_trajectory(a, AlphaFixed{std::uint64_t{1} << 62});
    CHECK(traj.first_degenerate_n == 3);
    CHECK(traj.at(3).raw == 0);
  }
}
