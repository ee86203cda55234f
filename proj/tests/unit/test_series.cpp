#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "gaplab/diffstats.hpp"
#include "gaplab/errors.hpp"
#include "gaplab/numtheory.hpp"
#include "gaplab/sequences.hpp"
#include "gaplab/series.hpp"

using namespace gaplab;

namespace {

// sum_k phi(k) max_b max_{l >= first(bk)} eta(l) / (bk) by exhaustive search.
double thcat_oracle(const std::vector<Term>& a, const std::function<double(std::uint64_t)>& eta,
                    std::uint64_t k_max, std::uint64_t b_max) {
  const std::size_t l_max = a.size();
  long double total = 0;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    double best = 0;
    for (std::uint64_t b = 1; b <= b_max; ++b) {
      const std::uint64_t u = b * k;
      std::size_t first = 0;
      for (std::size_t m = 2; m <= l_max && first == 0; ++m) {
        for (std::size_t i = 0; i + 1 < m; ++i) {
          if (a[m - 1] - a[i] == u) first = m;
        }
      }
      if (first == 0) continue;
      for (std::size_t l = first; l <= l_max; ++l) best = std::max(best, eta(l) / static_cast<double>(u));
    }
    total += static_cast<long double>(totient(k)) * best;
  }
  return static_cast<double>(total);
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("Catlin examples") {
    CHECK(catlin_series_partial([](std::uint64_t) { return 0.0; }, 50, 50) == 0.0);
    CHECK(catlin_series_partial([](std::uint64_t k) { return k == 1 ? 1.0 : 0.0; }, 1, 1) == 1.0);
  }

  TEST_CASE("Catlin with psi(k) = k^-2 against exhaustive b-scan") {
    auto psi = [](std::uint64_t k) { return 1.0 / (static_cast<double>(k) * static_cast<double>(k)); };
    long double want = 0;
    for (std::uint64_t k = 1; k <= 100; ++k) {
      // psi(bk)/(bk) is decreasing in b so b = 1 wins.
      want += static_cast<long double>(totient(k)) * psi(k) / static_cast<double>(k);
    }
    CHECK(catlin_series_partial(psi, 100, 100) == doctest::Approx(static_cast<double>(want)));
  }

  TEST_CASE("Catlin with a non-monotone psi") {
    auto psi = [](std::uint64_t k) { return k % 6 == 0 ? 0.4 : 1e-3; };
    long double want = 0;
    for (std::uint64_t k = 1; k <= 60; ++k) {
      double best = 0;
      for (std::uint64_t b = 1; b <= 30; ++b) best = std::max(best, psi(b * k) / static_cast<double>(b * k));
      want += static_cast<long double>(totient(k)) * best;
    }
    CHECK(catlin_series_partial(psi, 60, 30) == doctest::Approx(static_cast<double>(want)));
  }

  TEST_CASE("thcat evaluators") {
    IntegerSequence sq(SequenceSpec::squares());
    const std::vector<Term> a(sq.prefix(60).begin(), sq.prefix(60).end());
    const auto first = first_occurrence(a, 50 * 20);
    auto zero = [](std::uint64_t) { return 0.0; };
    CHECK(thcat_series_partial(first, zero, true, 50, 20, 60) == 0.0);

    auto cube = [](std::uint64_t l) { return std::pow(static_cast<double>(l), -3.0); };
    const double collapsed = thcat_series_partial(first, cube, true, 50, 20, 60);
    const double general = thcat_series_partial(first, cube, false, 50, 20, 60);
    CHECK(collapsed == general);
    CHECK(general == doctest::Approx(thcat_oracle(a, cube, 50, 20)));

    auto bumpy = [](std::uint64_t l) { return l % 10 == 0 ? 0.5 : 1.0 / static_cast<double>(l * l); };
    CHECK(thcat_series_partial(first, bumpy, false, 50, 20, 60) ==
          doctest::Approx(thcat_oracle(a, bumpy, 50, 20)));
  }

  TEST_CASE("thcat horizon") {
    IntegerSequence sq(SequenceSpec::squares());
    const auto first = first_occurrence(sq.prefix(30), 100);
    CHECK_THROWS_AS((void)thcat_series_partial(first, [](std::uint64_t) { return 1.0; }, true, 10, 10, 40),
                    HorizonError);
  }

  TEST_CASE("squares with eta = N^-3: tail differences shrink") {
    // The tail S(2K) - S(K) decays like K^(-1/2) here, so only that rate is
    // checked, not a fixed absolute tolerance.
    IntegerSequence sq(SequenceSpec::squares());
    auto eta = [](std::uint64_t l) { return std::pow(static_cast<double>(l), -3.0); };
    double prev_diff = 1e9;
    for (std::uint64_t k : {50, 100, 200, 400}) {
      const double s1 = thcat_series_partial(sq, eta, true, k, 100, 2000);
      const double s2 = thcat_series_partial(sq, eta, true, 2 * k, 100, 2000);
      const double diff = s2 - s1;
      CHECK(diff >= 0.0);
      CHECK(diff < prev_diff);
      CHECK(diff <= 0.2 / std::sqrt(static_cast<double>(k)));
      prev_diff = diff;
    }
  }

  TEST_CASE("JSON report") {
    const std::string j = series_report_json({"catlin", 10, 5, 0, 1.5});
    CHECK(j.find("\"series\": \"catlin\"") < j.find("\"K\": 10"));
    CHECK(j.find("\"partial_sum\": 1.5") != std::string::npos);
  }
}
