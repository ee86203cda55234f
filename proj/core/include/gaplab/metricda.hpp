#pragma once

#include <cstdint>
#include <span>

#include "gaplab/intervals.hpp"
#include "gaplab/numtheory.hpp"

namespace gaplab {

/// S_k = [0,1] ∩ union over a in [0, k] of (a/k - psi/k, a/k + psi/k).
/// With coprime_only, a ranges over gcd(a, k) = 1. Endpoint intervals at
/// a = 0 and a = k are clipped to [0, 1], not wrapped. Requires k >= 1 and
/// 0 <= psi < 1/2.
[[nodiscard]] IntervalUnion build_S(std::uint64_t k, const Fraction& psi, bool coprime_only);

struct OverlapDiagnostics {
  double D = 0.0;  ///< max(z_m psi_n, z_n psi_m) / gcd(z_m, z_n)
  double P = 0.0;  ///< prod (1 + 1/p) over p | z_m z_n / gcd^2, D < p <= prime_bound; 0 if D < 1
  Rational lhs_measure;  ///< lambda(S_m ∩ S_n), exact
  Rational measure_m;
  Rational measure_n;
  double rhs_bound = 0.0;  ///< sqrt(psi_m psi_n) / prime_bound + P lambda(S_m) lambda(S_n)
  double ratio = 0.0;      ///< lhs / rhs_bound (+inf when rhs_bound == 0 < lhs)
};

/// Overlap quantities of two approximation sets. Diagnostic only: the
/// inequality they enter holds up to an unspecified constant, so only the
/// ratio is reported.
[[nodiscard]] OverlapDiagnostics overlap_diagnostics(std::uint64_t z_m, std::uint64_t z_n,
                                                     const Fraction& psi_m,
                                                     const Fraction& psi_n,
                                                     std::uint64_t prime_bound,
                                                     bool coprime_only = true);

struct ChungErdosResult {
  Rational lhs;  ///< lambda(union)
  Rational rhs;  ///< (sum lambda)^2 / sum_{i,j} lambda(A_i ∩ A_j)
  bool holds = false;
};

/// Exact check of lambda(∪ A_i) >= (Σ λ(A_i))² / ΣΣ λ(A_i ∩ A_j), with a
/// slack of 2^-40. Throws InvalidArgument if every union has measure zero.
[[nodiscard]] ChungErdosResult chung_erdos_check(std::span<const IntervalUnion> unions);

/// #{n : ||z_n alpha|| <= 1/(2M)}. z_n = 0 counts (its norm is 0); negative
/// entries use ||-x|| = ||x||. Requires M > 0.
[[nodiscard]] std::uint64_t D_statistic(std::span<const std::int64_t> z, double m,
                                        AlphaFixed alpha);

}  // namespace gaplab
