#include "gaplab/metricda.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "gaplab/errors.hpp"

namespace gaplab {

namespace {

using u128 = unsigned __int128;

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

IntervalUnion build_S(std::uint64_t k, const Fraction& psi, bool coprime_only) {
  if (k == 0) throw InvalidArgument("build_S needs k >= 1");
  if (!(psi < Fraction{1, 2})) throw InvalidArgument("build_S needs psi < 1/2");
  const std::uint64_t p = psi.num();
  const std::uint64_t q = psi.den();
  const u128 den = static_cast<u128>(k) * q;
  if (den > (u128{1} << 62)) throw CapacityError("k * denominator(psi) too large for build_S");
  const std::uint64_t d = static_cast<std::uint64_t>(den);
  std::vector<Interval> parts;
  parts.reserve(k + 1);
  for (std::uint64_t a = 0; a <= k; ++a) {
    if (coprime_only && std::gcd(a, k) != 1) continue;
    const std::uint64_t centre = a * q;
    const std::uint64_t lo = centre >= p ? centre - p : 0;
    const std::uint64_t hi = centre + p;
    parts.push_back({Fraction{lo, d}, Fraction{hi, d}});
  }
  return IntervalUnion::from_intervals(std::move(parts));
}

OverlapDiagnostics overlap_diagnostics(std::uint64_t z_m, std::uint64_t z_n,
                                       const Fraction& psi_m, const Fraction& psi_n,
                                       std::uint64_t prime_bound, bool coprime_only) {
  if (z_m == 0 || z_n == 0) throw InvalidArgument("overlap diagnostics need z >= 1");
  if (z_m == z_n) throw InvalidArgument("overlap diagnostics need z_m != z_n");
  if (prime_bound == 0) throw InvalidArgument("prime bound must be positive");
  OverlapDiagnostics out;
  const std::uint64_t g = std::gcd(z_m, z_n);
  const Rational zm_psin = Rational(boost::multiprecision::cpp_int(z_m)) * psi_n.to_rational();
  const Rational zn_psim = Rational(boost::multiprecision::cpp_int(z_n)) * psi_m.to_rational();
  const Rational d_exact =
      (zm_psin > zn_psim ? zm_psin : zn_psim) / Rational(boost::multiprecision::cpp_int(g));
  out.D = to_double(d_exact);

  if (d_exact < 1) {
    out.P = 0.0;
  } else {
    std::vector<std::uint64_t> primes = prime_factors(z_m / g);
    for (const auto p : prime_factors(z_n / g)) primes.push_back(p);
    long double product = 1.0L;
    for (const auto p : primes) {
      if (Rational(boost::multiprecision::cpp_int(p)) > d_exact && p <= prime_bound) {
        product *= 1.0L + 1.0L / static_cast<long double>(p);
      }
    }
    out.P = static_cast<double>(product);
  }

  const IntervalUnion s_m = build_S(z_m, psi_m, coprime_only);
  const IntervalUnion s_n = build_S(z_n, psi_n, coprime_only);
  out.measure_m = s_m.measure();
  out.measure_n = s_n.measure();
  out.lhs_measure = intersect(s_m, s_n).measure();
  out.rhs_bound = std::sqrt(psi_m.to_double() * psi_n.to_double()) /
                      static_cast<double>(prime_bound) +
                  out.P * to_double(out.measure_m) * to_double(out.measure_n);
  const double lhs = to_double(out.lhs_measure);
  if (out.rhs_bound > 0.0) {
    out.ratio = lhs / out.rhs_bound;
  } else {
    out.ratio = lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return out;
}

ChungErdosResult chung_erdos_check(std::span<const IntervalUnion> unions) {
  if (unions.empty()) throw InvalidArgument("Chung-Erdos check needs at least one union");
  std::vector<Rational> measures;
  measures.reserve(unions.size());
  Rational sum = 0;
  for (const auto& u : unions) {
    measures.push_back(u.measure());
    sum += measures.back();
  }
  if (sum == 0) throw InvalidArgument("Chung-Erdos check needs a union of positive measure");
  Rational pair_sum = 0;
  for (std::size_t i = 0; i < unions.size(); ++i) {
    pair_sum += measures[i];
    for (std::size_t j = i + 1; j < unions.size(); ++j) {
      pair_sum += 2 * intersect(unions[i], unions[j]).measure();
    }
  }
  ChungErdosResult out;
  out.lhs = unite(unions).measure();
  out.rhs = sum * sum / pair_sum;
  const Rational slack(boost::multiprecision::cpp_int(1),
                       boost::multiprecision::cpp_int(1) << 40);
  out.holds = out.lhs >= out.rhs - slack;
  return out;
}

std::uint64_t D_statistic(std::span<const std::int64_t> z, double m, AlphaFixed alpha) {
  if (!(m > 0.0) || !std::isfinite(m)) throw InvalidArgument("D statistic needs M > 0");
  // ||x|| = t / 2^64 <= 1/(2M)  <=>  t <= 2^63 / M.
  const long double threshold = std::ldexp(1.0L, 63) / static_cast<long double>(m);
  std::uint64_t count = 0;
  for (const std::int64_t v : z) {
    const std::uint64_t k = v < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(v)
                                  : static_cast<std::uint64_t>(v);
    const std::uint64_t t = torus_norm(k, alpha).raw;
    if (static_cast<long double>(t) <= threshold) ++count;
  }
  return count;
}

}  // namespace gaplab
