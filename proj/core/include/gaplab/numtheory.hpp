#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gaplab {

/// Default upper bound on the number of entries of any sieve table.
inline constexpr std::uint64_t kDefaultSieveCapacity = std::uint64_t{1} << 31;

/// A dyadic fraction raw / 2^64 with raw < 2^64, i.e. a value in [0, 1).
///
/// Used for torus distances and gap lengths; all comparisons are integer
/// comparisons of `raw`.
struct Dyadic {
  std::uint64_t raw = 0;

  friend constexpr auto operator<=>(Dyadic, Dyadic) = default;

  [[nodiscard]] double to_double() const;
  [[nodiscard]] long double to_long_double() const;
  /// Decimal rendering with 21 significant digits.
  [[nodiscard]] std::string to_string() const;
};

/// alpha = numerator / 2^64, a point of the torus with 64 fractional bits.
struct AlphaFixed {
  std::uint64_t numerator = 0;

  friend constexpr bool operator==(AlphaFixed, AlphaFixed) = default;

  /// Nearest dyadic to x in [0, 1). Values that round to 1 wrap to 0.
  static AlphaFixed from_double(double x);
  /// Nearest dyadic to p / q, 0 <= p < q.
  static AlphaFixed from_rational(std::uint64_t p, std::uint64_t q);

  [[nodiscard]] double to_double() const;
};

/// ||k alpha||, exact: f = k * numerator mod 2^64, result min(f, 2^64 - f).
[[nodiscard]] Dyadic torus_norm(std::uint64_t k, AlphaFixed alpha);

/// The fractional part of k * alpha as a raw 64-bit torus coordinate.
[[nodiscard]] inline std::uint64_t torus_point(std::uint64_t k, AlphaFixed alpha) {
  return k * alpha.numerator;  // wraps mod 2^64
}

/// Circular distance between two torus coordinates.
[[nodiscard]] inline Dyadic torus_distance(std::uint64_t x, std::uint64_t y) {
  const std::uint64_t d = x - y;
  const std::uint64_t e = y - x;
  return Dyadic{d < e ? d : e};
}

/// Primes p <= x in ascending order.
/// Throws CapacityError if x exceeds `capacity`.
[[nodiscard]] std::vector<std::uint64_t> primes_up_to(
    std::uint64_t x, std::uint64_t capacity = kDefaultSieveCapacity);

/// Euler's totient for 1 <= k <= limit(), filled by a linear sieve.
class TotientTable {
 public:
  TotientTable() = default;
  explicit TotientTable(std::uint64_t limit,
                        std::uint64_t capacity = kDefaultSieveCapacity);

  [[nodiscard]] std::uint64_t limit() const { return phi_.empty() ? 0 : phi_.size() - 1; }
  /// phi(k) for 1 <= k <= limit(); throws InvalidArgument otherwise.
  [[nodiscard]] std::uint64_t at(std::uint64_t k) const;
  [[nodiscard]] std::uint64_t operator[](std::uint64_t k) const { return phi_[k]; }

 private:
  std::vector<std::uint32_t> phi_;
};

[[nodiscard]] TotientTable totient_sieve(std::uint64_t x,
                                         std::uint64_t capacity = kDefaultSieveCapacity);

/// prod_{p <= x} (1 - 1/p). Requires x >= 2.
[[nodiscard]] double mertens_product(std::uint64_t x);

/// Euler's totient of a single integer by trial division.
[[nodiscard]] std::uint64_t totient(std::uint64_t n);

/// Distinct prime factors of n by trial division, ascending.
[[nodiscard]] std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace gaplab
