#include <cstdint>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "gaplab/diffstats.hpp"
#include "gaplab/errors.hpp"
#include "gaplab/multtable.hpp"
#include "gaplab/rng.hpp"
#include "gaplab/sequences.hpp"

using namespace gaplab;

namespace {

std::uint64_t h_brute(std::uint64_t x, std::uint64_t y, std::uint64_t z) {
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= x; ++n) {
    for (std::uint64_t d = y + 1; d <= z; ++d) {
      if (n % d == 0) {
        ++count;
        break;
      }
    }
  }
  return count;
}

}  // namespace

TEST_SUITE("multtable") {
  TEST_CASE("H examples") {
    CHECK(H_count({20, 2, 4}) == 10);
    CHECK(H_count({20, 5, 5}) == 0);
    CHECK(H_count({10, 1, 2}) == 5);
    CHECK_THROWS_AS((void)H_count({10, 0, 2}), InvalidArgument);
    CHECK_THROWS_AS((void)H_count({1'000'000, 1, 2}, 1000), CapacityError);
  }

  TEST_CASE("H against a divisor scan") {
    SplitMix64 rng(12);
    for (int i = 0; i < 200; ++i) {
      const std::uint64_t x = rng.below(2000);
      const std::uint64_t y = 1 + rng.below(60);
      const std::uint64_t z = y + rng.below(80);
      REQUIRE(H_count({x, y, z}) == h_brute(x, y, z));
    }
  }

  TEST_CASE("Ford window flag") {
    CHECK(HQuery{10000, 10, 50}.in_ford_window());
    CHECK_FALSE(HQuery{50, 10, 50}.in_ford_window());
    CHECK_FALSE(HQuery{10000, 10, 15}.in_ford_window());
  }

  TEST_CASE("table counts") {
    CHECK(table_count(1) == 1);
    CHECK(table_count(3) == 6);
    for (std::uint64_t n = 1; n <= 80; ++n) {
      std::set<std::uint64_t> products;
      for (std::uint64_t a = 1; a <= n; ++a) {
        for (std::uint64_t b = 1; b <= n; ++b) products.insert(a * b);
      }
      REQUIRE(table_count(n) == products.size());
    }
  }

  TEST_CASE("square differences match diffstats") {
    CHECK(square_diff_count(2) == 1);
    CHECK(square_diff_count(4) == 6);
    IntegerSequence sq(SequenceSpec::squares());
    const auto rows = diff_trajectory(sq.prefix(600), false);
    for (std::uint64_t n = 1; n <= 600; n += 17) REQUIRE(square_diff_count(n) == rows[n - 1].c_plus);
  }

  TEST_CASE("CSV") {
    std::ostringstream os;
    const std::vector<std::uint64_t> ns{3};
    write_multtable_csv(os, ns);
    CHECK(os.str().rfind("N,count,ford_ratio\r\n3,6,", 0) == 0);
  }
}
