#include "gaplab/envelopes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "gaplab/errors.hpp"

namespace gaplab {

namespace {

constexpr std::array<std::pair<EnvelopeKind, std::string_view>, 10> kNames{{
    {EnvelopeKind::th1_lower, "th1_lower"},
    {EnvelopeKind::th1_upper_sizedep, "th1_upper_sizedep"},
    {EnvelopeKind::th1_upper_plain, "th1_upper_plain"},
    {EnvelopeKind::conj_up, "conj_up"},
    {EnvelopeKind::allN, "allN"},
    {EnvelopeKind::primes_cd, "primes_cd"},
    {EnvelopeKind::squares_up, "squares_up"},
    {EnvelopeKind::squares_low, "squares_low"},
    {EnvelopeKind::billiard_up, "billiard_up"},
    {EnvelopeKind::billiard_low, "billiard_low"},
}};

const double kMultTableC = 1.0 - (1.0 + std::log(std::log(2.0))) / std::log(2.0);

}  // namespace

std::string_view envelope_kind_name(EnvelopeKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

EnvelopeKind parse_envelope_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw InvalidArgument("unknown envelope '" + std::string(name) + "'");
}

std::string Envelope::name() const {
  std::string s(envelope_kind_name(kind));
  if (strengthened) s += "_strong";
  return s;
}

EnvelopeSide envelope_side(EnvelopeKind kind) {
  switch (kind) {
    case EnvelopeKind::th1_lower:
    case EnvelopeKind::primes_cd:
    case EnvelopeKind::squares_low:
    case EnvelopeKind::billiard_low:
      return EnvelopeSide::lower;
    default:
      return EnvelopeSide::upper;
  }
}

double multiplication_table_constant() { return kMultTableC; }

double clamped_log(double x) { return std::max(1.0, std::log(x)); }

double clamped_iterated_log(double x, int depth) {
  double v = x;
  for (int i = 0; i < depth; ++i) v = clamped_log(v);
  return v;
}

double eval_envelope(const Envelope& e, double n, double c_n, std::optional<double> a_n) {
  if (!(n >= 1.0)) throw InvalidArgument("envelope needs N >= 1");
  if (!(c_n >= 1.0)) throw InvalidArgument("envelope needs C_N >= 1");
  const double eps = e.epsilon;
  const double c = kMultTableC;
  const double l1 = clamped_iterated_log(n, 1);
  const double l2 = clamped_iterated_log(n, 2);
  const double l3 = clamped_iterated_log(n, 3);
  switch (e.kind) {
    case EnvelopeKind::th1_lower:
      return 1.0 / (c_n * l1 * std::pow(l2, 1.0 + eps));
    case EnvelopeKind::th1_upper_sizedep:
      if (!a_n) throw InvalidArgument("th1_upper_sizedep needs a_N");
      return clamped_iterated_log(*a_n, 2) / (c_n * l1 * l2);
    case EnvelopeKind::th1_upper_plain:
      return 1.0 / c_n;
    case EnvelopeKind::conj_up:
      return std::pow(l1, eps) / c_n;
    case EnvelopeKind::allN:
      return std::pow(n, eps) / c_n;
    case EnvelopeKind::primes_cd:
      return 1.0 / (n * l1 * l1 * l2 * std::pow(l3, 1.0 + eps));
    case EnvelopeKind::squares_up:
      return std::pow(l1, c - 1.0) * std::sqrt(l2) / (n * n);
    case EnvelopeKind::squares_low:
      return std::pow(l1, c - 1.0) * std::sqrt(l2) / (n * n * std::pow(l3, 1.0 + eps));
    case EnvelopeKind::billiard_up: {
      double v = std::pow(l1, 2.0 * c) / n;
      if (e.strengthened) v *= std::pow(l2, 3.0 - c - eps);
      return v;
    }
    case EnvelopeKind::billiard_low: {
      double v = std::pow(l1, 2.0 * c) / (n * l1);
      if (e.strengthened) v *= std::pow(l2, 2.0 - c - eps) / 3.0;
      return v;
    }
  }
  throw InvalidArgument("unknown envelope kind");
}

}  // namespace gaplab
