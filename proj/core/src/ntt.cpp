#include "gaplab/ntt.hpp"

#include <bit>
#include <utility>

#include "gaplab/errors.hpp"

namespace gaplab::ntt {

namespace {

inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % kModulus);
}

inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b) {
  const std::uint64_t s = static_cast<std::uint64_t>(a) + b;
  return static_cast<std::uint32_t>(s >= kModulus ? s - kModulus : s);
}

inline std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b) {
  return a >= b ? a - b : static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) + kModulus - b);
}

}  // namespace

std::uint32_t pow_mod(std::uint32_t base, std::uint64_t exp) {
  std::uint32_t result = 1;
  while (exp != 0) {
    if (exp & 1U) result = mul_mod(result, base);
    base = mul_mod(base, base);
    exp >>= 1U;
  }
  return result;
}

void transform(std::span<std::uint32_t> data, bool inverse) {
  const std::size_t n = data.size();
  if (n <= 1) return;
  if (!std::has_single_bit(n) || std::countr_zero(n) > kMaxLog2Length) {
    throw CapacityError("transform length must be a power of two up to 2^30");
  }
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1U;
    for (; j & bit; bit >>= 1U) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  std::vector<std::uint32_t> roots;
  for (std::size_t len = 2; len <= n; len <<= 1U) {
    std::uint32_t w = pow_mod(kPrimitiveRoot, (kModulus - 1) / len);
    if (inverse) w = pow_mod(w, kModulus - 2);
    const std::size_t half = len / 2;
    roots.resize(half);
    roots[0] = 1;
    for (std::size_t k = 1; k < half; ++k) roots[k] = mul_mod(roots[k - 1], w);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::uint32_t u = data[i + k];
        const std::uint32_t v = mul_mod(data[i + k + half], roots[k]);
        data[i + k] = add_mod(u, v);
        data[i + k + half] = sub_mod(u, v);
      }
    }
  }
  if (inverse) {
    const std::uint32_t inv_n = pow_mod(static_cast<std::uint32_t>(n % kModulus), kModulus - 2);
    for (auto& x : data) x = mul_mod(x, inv_n);
  }
}

void autocorrelate_inplace(std::vector<std::uint32_t>& data) {
  const std::size_t n = data.size();
  transform(data, false);
  // The transform of x[-i mod n] is X[-k mod n], so the correlation spectrum
  // is X[k] * X[n-k]. Pairs (k, n-k) are updated together.
  data[0] = mul_mod(data[0], data[0]);
  if (n > 1) data[n / 2] = mul_mod(data[n / 2], data[n / 2]);
  for (std::size_t k = 1; k < n / 2; ++k) {
    const std::uint32_t p = mul_mod(data[k], data[n - k]);
    data[k] = p;
    data[n - k] = p;
  }
  transform(data, true);
}

}  // namespace gaplab::ntt
