#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace gaplab {

/// Closed-form comparison curves for minimal-gap trajectories.
///
/// Every logarithm is read as max(1, log x) at each nesting level, so
/// log2(x) = max(1, log(max(1, log x))), and likewise for log3.
enum class EnvelopeKind {
  th1_lower,          ///< 1 / (C_N log N (log2 N)^(1+eps))
  th1_upper_sizedep,  ///< log2(a_N) / (C_N log N log2 N)
  th1_upper_plain,    ///< 1 / C_N
  conj_up,            ///< (log N)^eps / C_N
  allN,               ///< N^eps / C_N
  primes_cd,          ///< 1 / (N (log N)^2 log2 N (log3 N)^(1+eps)); eps = 0 gives the divergent side
  squares_up,         ///< (log N)^(c-1) (log2 N)^(1/2) / N^2
  squares_low,        ///< squares_up / (log3 N)^(1+eps)
  billiard_up,        ///< (log N)^(2c) / N
  billiard_low,       ///< (log N)^(2c) / (N log N)
};

/// Which way a trajectory is compared against an envelope.
///  lower: the envelope should be violated (delta below it) only finitely often.
///  upper: delta should drop to or below it for infinitely many N.
/// billiard_up is the exception: there the recurring event is delta >= envelope.
enum class EnvelopeSide { lower, upper };

struct Envelope {
  EnvelopeKind kind = EnvelopeKind::th1_lower;
  double epsilon = 1.0;
  /// billiard_* only: include the (log2 N) powers the proof actually gives,
  /// (log2 N)^(2-c-eps) / 3 on the low side and (log2 N)^(3-c-eps) on the up side.
  bool strengthened = false;

  [[nodiscard]] std::string name() const;
};

[[nodiscard]] std::string_view envelope_kind_name(EnvelopeKind kind);
[[nodiscard]] EnvelopeKind parse_envelope_kind(std::string_view name);
[[nodiscard]] EnvelopeSide envelope_side(EnvelopeKind kind);

/// c = 1 - (1 + log log 2) / log 2, computed at startup in double precision.
[[nodiscard]] double multiplication_table_constant();

/// max(1, log x)
[[nodiscard]] double clamped_log(double x);
/// log applied `depth` times with clamping at every level (depth >= 1).
[[nodiscard]] double clamped_iterated_log(double x, int depth);

/// Evaluates the envelope at N. C_N is the full difference-set cardinality;
/// a_N is needed for th1_upper_sizedep (InvalidArgument otherwise).
[[nodiscard]] double eval_envelope(const Envelope& e, double n, double c_n,
                                   std::optional<double> a_n = std::nullopt);

}  // namespace gaplab
