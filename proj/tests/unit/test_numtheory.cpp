#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "doctest.h"
#include "gaplab/errors.hpp"
#include "gaplab/numtheory.hpp"
#include "gaplab/rng.hpp"
#include "unit/oracles.hpp"

using namespace gaplab;

namespace {

// Segmented sieve with 2^15-wide blocks, independent of the library sieve.
std::uint64_t segmented_prime_count(std::uint64_t x) {
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x))) + 1;
  std::vector<std::uint64_t> base;
  for (std::uint64_t p = 2; p <= root; ++p) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime) base.push_back(p);
  }
  constexpr std::uint64_t kBlock = 1 << 15;
  std::uint64_t count = 0;
  std::vector<char> mark(kBlock);
  for (std::uint64_t lo = 2; lo <= x; lo += kBlock) {
    const std::uint64_t hi = std::min(x, lo + kBlock - 1);
    std::fill(mark.begin(), mark.end(), 1);
    for (auto p : base) {
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t m = start; m <= hi; m += p) mark[m - lo] = 0;
    }
    for (std::uint64_t n = lo; n <= hi; ++n) count += mark[n - lo];
  }
  return count;
}

}  // namespace

TEST_SUITE("numtheory") {
  TEST_CASE("small prime lists") {
    CHECK(primes_up_to(1).empty());
    CHECK(primes_up_to(10) == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(primes_up_to(2) == std::vector<std::uint64_t>{2});
  }

  TEST_CASE("pi(10^6) against a segmented sieve") {
    const auto primes = primes_up_to(1'000'000);
    CHECK(primes.size() == segmented_prime_count(1'000'000));
    CHECK(primes.size() == 78498);
    CHECK(primes == oracle::sieve(1'000'000));
  }

  TEST_CASE("sieve capacity") { CHECK_THROWS_AS((void)primes_up_to(1'000'000, 1000), CapacityError); }

  TEST_CASE("totient values") {
    CHECK(totient(1) == 1);
    CHECK(totient(12) == 4);
    const TotientTable t = totient_sieve(2000);
    for (std::uint64_t n = 1; n <= 2000; ++n) {
      std::uint64_t coprime = 0;
      for (std::uint64_t a = 1; a <= n; ++a) coprime += std::gcd(a, n) == 1;
      REQUIRE(t[n] == coprime);
      REQUIRE(totient(n) == coprime);
    }
  }

  TEST_CASE("totient summatory function") {
    // #{(a, b) in [1, x]^2 : gcd(a, b) = 1} = 2 sum_{k <= x} phi(k) - 1.
    const std::uint64_t x = 1000;
    const TotientTable t = totient_sieve(x);
    std::uint64_t pairs = 0;
    for (std::uint64_t a = 1; a <= x; ++a) {
      for (std::uint64_t b = 1; b <= x; ++b) pairs += std::gcd(a, b) == 1;
    }
    std::uint64_t sum = 0;
    for (std::uint64_t k = 1; k <= x; ++k) sum += t[k];
    CHECK(2 * sum - 1 == pairs);

    const TotientTable big = totient_sieve(10'000);
    double total = 0;
    for (std::uint64_t k = 1; k <= 10'000; ++k) total += static_cast<double>(big[k]);
    const double expected = 3.0 / (M_PI * M_PI) * 1e8;
    CHECK(std::abs(total / expected - 1.0) < 0.01);
  }

  TEST_CASE("torus norm examples") {
    const AlphaFixed half{std::uint64_t{1} << 63};
    CHECK(torus_norm(3, half).raw == std::uint64_t{1} << 63);
    CHECK(torus_norm(2, half).raw == 0);
    const std::uint64_t k = std::uint64_t{1} << 63;
    CHECK(torus_norm(k, AlphaFixed{12345}).raw == std::uint64_t{1} << 63);
    CHECK(torus_norm(k, AlphaFixed{12346}).raw == 0);
  }

  TEST_CASE("torus norm of 5/3 against rational arithmetic") {
    using boost::multiprecision::cpp_rational;
    using boost::multiprecision::cpp_int;
    const AlphaFixed third = AlphaFixed::from_rational(1, 3);
    const cpp_rational got(cpp_int(torus_norm(5, third).raw), cpp_int(1) << 64);
    const cpp_rational err = abs(got - cpp_rational(1, 3));
    CHECK(err <= cpp_rational(5, 1) / cpp_rational(cpp_int(1) << 64));
  }

  TEST_CASE("torus norm property against 128-bit products") {
    SplitMix64 rng(7);
    for (int i = 0; i < 10000; ++i) {
      const std::uint64_t k = rng.next() >> (rng.next() % 64);
      const AlphaFixed a{rng.next()};
      REQUIRE(torus_norm(k, a).raw == oracle::torus_norm_raw(k, a.numerator));
    }
  }

  TEST_CASE("alpha conversions") {
    CHECK(AlphaFixed::from_double(0.5).numerator == std::uint64_t{1} << 63);
    CHECK(AlphaFixed::from_rational(1, 4).numerator == std::uint64_t{1} << 62);
    CHECK(std::abs(AlphaFixed::from_double(0.3).to_double() - 0.3) < 1e-15);
    CHECK_THROWS_AS((void)AlphaFixed::from_double(1.5), InvalidArgument);
  }

  TEST_CASE("Mertens product") {
    CHECK(mertens_product(2) == doctest::Approx(0.5));
    CHECK(mertens_product(3) == doctest::Approx(1.0 / 3.0));
    const double gamma = 0.57721566490153286;
    const double expected = std::exp(-gamma) / std::log(1e6);
    CHECK(std::abs(mertens_product(1'000'000) / expected - 1.0) < 0.01);
  }

  TEST_CASE("prime factors") {
    CHECK(prime_factors(1).empty());
    CHECK(prime_factors(360) == std::vector<std::uint64_t>{2, 3, 5});
    CHECK(prime_factors(97) == std::vector<std::uint64_t>{97});
  }

  TEST_CASE("SplitMix64 reference outputs") {
    // First outputs for seed 0 from the published reference implementation.
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.next() == 0x06C45D188009454FULL);
  }

  TEST_CASE("sampled alpha numerators are odd") {
    SplitMix64 rng(trial_seed(1, 0));
    for (int i = 0; i < 1000; ++i) CHECK((sample_alpha(rng).numerator & 1U) == 1U);
  }
}
