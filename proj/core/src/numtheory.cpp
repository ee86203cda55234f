#include "gaplab/numtheory.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "gaplab/errors.hpp"

namespace gaplab {

using u128 = unsigned __int128;

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(raw), -64); }

long double Dyadic::to_long_double() const {
  return std::ldexp(static_cast<long double>(raw), -64);
}

std::string Dyadic::to_string() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", to_long_double());
  return buf;
}

AlphaFixed AlphaFixed::from_double(double x) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw InvalidArgument("alpha must lie in [0, 1)");
  }
  // 2^64 * x is exact in long double for any double x; round to nearest.
  const long double scaled = std::ldexp(static_cast<long double>(x), 64);
  const long double rounded = std::nearbyint(scaled);
  if (rounded >= std::ldexp(1.0L, 64)) return AlphaFixed{0};
  return AlphaFixed{static_cast<std::uint64_t>(rounded)};
}

AlphaFixed AlphaFixed::from_rational(std::uint64_t p, std::uint64_t q) {
  if (q == 0 || p >= q) throw InvalidArgument("alpha = p/q requires 0 <= p < q");
  const u128 scaled = (static_cast<u128>(p) << 64) + q / 2;
  const u128 value = scaled / q;
  return AlphaFixed{static_cast<std::uint64_t>(value)};  // 2^64 wraps to 0
}

double AlphaFixed::to_double() const {
  return std::ldexp(static_cast<double>(numerator), -64);
}

Dyadic torus_norm(std::uint64_t k, AlphaFixed alpha) {
  const std::uint64_t f = torus_point(k, alpha);
  const std::uint64_t g = std::uint64_t{0} - f;
  return Dyadic{f < g ? f : g};
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t x, std::uint64_t capacity) {
  if (x > capacity) {
    throw CapacityError("prime sieve bound " + std::to_string(x) +
                        " exceeds capacity " + std::to_string(capacity));
  }
  std::vector<std::uint64_t> primes;
  if (x < 2) return primes;
  // Odd-only sieve: index i represents 2i+1.
  const std::uint64_t half = (x - 1) / 2;
  std::vector<bool> composite(half + 1, false);
  primes.push_back(2);
  for (std::uint64_t i = 1; i <= half; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    primes.push_back(p);
    for (std::uint64_t j = (p * p - 1) / 2; j <= half && p * p <= x; j += p) {
      composite[j] = true;
    }
  }
  return primes;
}

TotientTable::TotientTable(std::uint64_t limit, std::uint64_t capacity) {
  if (limit < 1) throw InvalidArgument("totient sieve needs x >= 1");
  if (limit > capacity || limit >= (std::uint64_t{1} << 32)) {
    throw CapacityError("totient sieve bound " + std::to_string(limit) +
                        " exceeds capacity");
  }
  phi_.assign(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  phi_[1] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (phi_[i] == 0) {
      phi_[i] = static_cast<std::uint32_t>(i - 1);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (const std::uint32_t p : primes) {
      const std::uint64_t m = i * p;
      if (m > limit) break;
      if (i % p == 0) {
        phi_[m] = phi_[i] * p;
        break;
      }
      phi_[m] = phi_[i] * (p - 1);
    }
  }
}

std::uint64_t TotientTable::at(std::uint64_t k) const {
  if (k < 1 || k > limit()) {
    throw InvalidArgument("totient index " + std::to_string(k) + " outside table");
  }
  return phi_[k];
}

TotientTable totient_sieve(std::uint64_t x, std::uint64_t capacity) {
  return TotientTable(x, capacity);
}

double mertens_product(std::uint64_t x) {
  if (x < 2) throw InvalidArgument("mertens_product requires x >= 2");
  long double product = 1.0L;
  for (const std::uint64_t p : primes_up_to(x)) {
    product *= 1.0L - 1.0L / static_cast<long double>(p);
  }
  return static_cast<double>(product);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> factors;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      factors.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

std::uint64_t totient(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t result = n;
  for (const std::uint64_t p : prime_factors(n)) result = result / p * (p - 1);
  return result;
}

}  // namespace gaplab
