#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gaplab::ntt {

/// Modulus 3 * 2^30 + 1 with primitive root 5; supports lengths up to 2^30.
inline constexpr std::uint32_t kModulus = 3221225473U;
inline constexpr std::uint32_t kPrimitiveRoot = 5;
inline constexpr int kMaxLog2Length = 30;

std::uint32_t pow_mod(std::uint32_t base, std::uint64_t exp);

/// In-place number-theoretic transform; data.size() must be a power of two.
void transform(std::span<std::uint32_t> data, bool inverse);

/// Cyclic autocorrelation r[u] = sum_i x[i] x[(i + u) mod L] mod kModulus,
/// computed in place with a single forward and inverse transform.
void autocorrelate_inplace(std::vector<std::uint32_t>& data);

}  // namespace gaplab::ntt
