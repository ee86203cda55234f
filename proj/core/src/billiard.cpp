#include "gaplab/billiard.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include "gaplab/errors.hpp"

namespace gaplab {

namespace {

using u128 = unsigned __int128;

constexpr u128 kOne = u128{1} << 64;

}  // namespace

long double Fixed128::to_long_double() const {
  const auto hi = static_cast<std::uint64_t>(raw >> 64);
  const auto lo = static_cast<std::uint64_t>(raw);
  return static_cast<long double>(hi) + std::ldexp(static_cast<long double>(lo), -64);
}

std::string Fixed128::to_string() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", to_long_double());
  return buf;
}

Fixed128 Fixed128::from_integer(std::uint64_t v) { return Fixed128{static_cast<u128>(v) << 64}; }

Fixed128 Fixed128::from_double(double v) {
  if (!(v >= 0.0) || v >= std::ldexp(1.0, 63)) {
    throw InvalidArgument("fixed-point value must lie in [0, 2^63)");
  }
  const double ip = std::floor(v);
  const long double frac = static_cast<long double>(v) - static_cast<long double>(ip);
  const auto f = static_cast<std::uint64_t>(std::floor(std::ldexp(frac, 64)));
  return Fixed128{(static_cast<u128>(static_cast<std::uint64_t>(ip)) << 64) | f};
}

BilliardAlpha BilliardAlpha::from_double(double alpha) {
  if (!(alpha > 0.0) || alpha > std::ldexp(1.0, 32)) {
    throw InvalidArgument("billiard alpha must lie in (0, 2^32]");
  }
  return BilliardAlpha{Fixed128::from_double(alpha)};
}

BilliardAlpha BilliardAlpha::from_rational(std::uint64_t p, std::uint64_t q) {
  if (p == 0 || q == 0) throw InvalidArgument("billiard alpha = p/q needs p, q >= 1");
  const u128 whole = p / q;
  if (whole > (u128{1} << 32)) throw InvalidArgument("billiard alpha exceeds 2^32");
  const u128 rem = p % q;
  const u128 frac = ((rem << 64) + q / 2) / q;
  return BilliardAlpha{Fixed128{(whole << 64) + frac}};
}

BilliardAlpha BilliardAlpha::shifted(AlphaFixed t) {
  return BilliardAlpha{Fixed128{kOne + t.numerator}};
}

double weyl_count(double alpha, double cutoff) {
  return std::numbers::pi * cutoff / (4.0 * std::sqrt(alpha));
}

Spectrum spectrum(BilliardAlpha alpha, double cutoff, std::size_t capacity) {
  if (alpha.value.raw == 0) throw InvalidArgument("billiard alpha must be positive");
  const double a = alpha.to_double();
  const double expected = weyl_count(a, cutoff) + std::sqrt(std::max(cutoff, 0.0)) + 16.0;
  if (expected > static_cast<double>(capacity)) {
    throw CapacityError("spectrum cutoff would produce about " +
                        std::to_string(static_cast<std::uint64_t>(expected)) + " entries");
  }
  Spectrum s;
  s.alpha = alpha;
  s.cutoff = Fixed128::from_double(std::max(cutoff, 0.0));
  const u128 limit = s.cutoff.raw;
  const u128 alpha_raw = alpha.value.raw;
  for (std::uint64_t m = 1;; ++m) {
    const u128 base = alpha_raw * (static_cast<u128>(m) * m);
    if (base + kOne > limit) break;
    for (std::uint64_t n = 1;; ++n) {
      const u128 v = base + (static_cast<u128>(n) * n << 64);
      if (v > limit) break;
      s.entries.push_back({Fixed128{v}, static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n)});
    }
  }
  std::sort(s.entries.begin(), s.entries.end(), [](const SpectrumEntry& x, const SpectrumEntry& y) {
    if (x.value != y.value) return x.value < y.value;
    return x.m < y.m;
  });
  for (std::size_t i = 0; i + 1 < s.entries.size(); ++i) {
    if (s.entries[i].value == s.entries[i + 1].value) s.collisions.push_back(i);
  }
  return s;
}

Fixed128 min_gap_spectrum(const Spectrum& s, std::size_t n) {
  if (n == 0) throw InvalidArgument("min_gap_spectrum needs N >= 1");
  if (s.entries.size() < n + 1) {
    throw InsufficientDataError("spectrum has " + std::to_string(s.entries.size()) +
                                " entries, N + 1 = " + std::to_string(n + 1) + " needed");
  }
  Fixed128 best{~u128{0}};
  for (std::size_t k = 0; k < n; ++k) {
    const u128 d = s.entries[k + 1].value.raw - s.entries[k].value.raw;
    if (d == 0) {
      throw CollisionError("spectrum collision at position " + std::to_string(k + 1));
    }
    best.raw = std::min(best.raw, d);
  }
  return best;
}

BilliardTrajectory billiard_trajectory(BilliardAlpha alpha, std::size_t n_max,
                                       BilliardEnvelopeOptions opts) {
  if (n_max == 0) throw InvalidArgument("billiard trajectory needs N_max >= 1");
  const double a = alpha.to_double();
  double cutoff = 4.0 * std::sqrt(a) * static_cast<double>(n_max + 2) / std::numbers::pi;
  cutoff = cutoff * 1.05 + 4.0 * std::sqrt(cutoff) + a + 2.0;
  Spectrum s = spectrum(alpha, cutoff);
  while (s.entries.size() < n_max + 1) {
    cutoff *= 1.5;
    s = spectrum(alpha, cutoff);
  }
  BilliardTrajectory t;
  t.alpha = alpha;
  t.cutoff = cutoff;
  t.rows.reserve(n_max);
  const Envelope up{EnvelopeKind::billiard_up, opts.epsilon, opts.strengthened};
  const Envelope low{EnvelopeKind::billiard_low, opts.epsilon, opts.strengthened};
  u128 running = ~u128{0};
  for (std::size_t k = 1; k <= n_max; ++k) {
    const u128 d = s.entries[k].value.raw - s.entries[k - 1].value.raw;
    if (d == 0) throw CollisionError("spectrum collision at position " + std::to_string(k));
    running = std::min(running, d);
    BilliardRow row;
    row.n = k;
    row.delta = Fixed128{running};
    const double nd = static_cast<double>(k);
    row.up_envelope = eval_envelope(up, nd, 1.0);
    row.low_envelope = eval_envelope(low, nd, 1.0);
    const long double delta = row.delta.to_long_double();
    row.hit_up = delta >= row.up_envelope;
    row.exceed_low = delta <= row.low_envelope;
    t.rows.push_back(row);
  }
  return t;
}

void write_billiard_csv(std::ostream& out, const BilliardTrajectory& t) {
  out << "N,delta,up_envelope,low_envelope,hit_up,exceed_low\r\n";
  char buf[128];
  for (const auto& r : t.rows) {
    std::snprintf(buf, sizeof buf, "%zu,%.21Lg,%.17g,%.17g,%d,%d\r\n", r.n,
                  r.delta.to_long_double(), r.up_envelope, r.low_envelope, r.hit_up ? 1 : 0,
                  r.exceed_low ? 1 : 0);
    out << buf;
  }
}

}  // namespace gaplab
