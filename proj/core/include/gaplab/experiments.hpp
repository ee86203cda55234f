#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gaplab/diffstats.hpp"
#include "gaplab/envelopes.hpp"
#include "gaplab/gaps.hpp"
#include "gaplab/sequences.hpp"

namespace gaplab {

/// Settings of a Monte Carlo run. The JSON form uses these field names.
struct ExperimentConfig {
  std::string mode = "gaps";  ///< gaps | billiard | report
  SequenceSpec sequence = SequenceSpec::squares();
  std::size_t n_max = 10'000;
  std::size_t alpha_trials = 100;
  std::uint64_t master_seed = 1;
  double epsilon = 1.0;
  /// Envelope names; empty selects the defaults of the mode.
  std::vector<std::string> envelopes;
  /// Windows [2^j, 2^(j+1)) with j <= dyadic_window_max are tracked.
  int dyadic_window_max = 13;
  /// A trajectory "recurs" against an envelope when it has events in at
  /// least this many distinct windows.
  int hits_required = 3;
  /// Events at N below these are ignored by the rate / window statistics.
  std::size_t rate_n_min = 1;
  std::size_t window_n_min = 1;
  /// billiard mode: use the (log2 N)-strengthened envelopes.
  bool strengthened = false;
  std::size_t threads = 1;
  /// Output prefix; empty means no files are written.
  std::string out;
  /// report mode: series truncations and the eta used.
  std::uint64_t series_k = 1'000;
  std::uint64_t series_b_max = 100;
  std::string eta = "power:3";

  /// Throws ParseError on malformed JSON, InvalidArgument on bad values.
  static ExperimentConfig from_json(std::string_view text);
  [[nodiscard]] std::string to_json() const;
  /// Throws InvalidArgument describing the first invalid field.
  void validate() const;
};

/// Aggregate over trials for one envelope.
///
/// An "event" is a violation for lower envelopes (delta below it) and a hit
/// for upper envelopes (delta at or below it). billiard_up is the one upper
/// envelope whose event is delta >= envelope.
struct EnvelopeSummary {
  std::string name;
  EnvelopeSide side = EnvelopeSide::lower;
  /// Indexed by window j: (alpha, N) pairs and events with N in [2^j, 2^(j+1)).
  std::vector<std::uint64_t> bucket_pairs;
  std::vector<std::uint64_t> bucket_events;
  /// Over N >= rate_n_min.
  std::uint64_t pairs_from_min = 0;
  std::uint64_t events_from_min = 0;
  std::uint64_t alphas_with_event_from_min = 0;
  /// window_histogram[w] = number of alphas with events in exactly w windows.
  std::vector<std::uint64_t> window_histogram;
  std::uint64_t alphas_recurring = 0;

  [[nodiscard]] double event_rate_from_min() const;
  [[nodiscard]] double bucket_rate(std::size_t j) const;
  [[nodiscard]] double fraction_recurring(std::size_t trials) const;
  /// Fraction of alphas with events in at least `w` windows.
  [[nodiscard]] double fraction_with_windows(std::size_t trials, std::size_t w) const;
};

struct AlphaEnvelopeResult {
  std::size_t last_event_n = 0;  ///< 0 = no event
  std::uint64_t events_from_min = 0;
  std::uint32_t windows = 0;
};

struct AlphaSummary {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t alpha_numerator = 0;  ///< torus point; billiard alpha = 1 + numerator / 2^64
  double alpha = 0.0;
  std::string final_delta;
  std::vector<AlphaEnvelopeResult> envelopes;
};

struct AggregateReport {
  ExperimentConfig config;
  std::vector<EnvelopeSummary> envelopes;
  std::vector<AlphaSummary> alphas;

  [[nodiscard]] const EnvelopeSummary& envelope(std::string_view name) const;
  /// Stable-key-order pretty JSON of the aggregate.
  [[nodiscard]] std::string to_json() const;
  /// RFC-4180 CSV with one row per alpha.
  [[nodiscard]] std::string to_csv() const;
};

/// Minimal-gap trajectories of (a_n alpha) for sampled alpha, compared
/// against envelopes. Output is identical for any thread count.
[[nodiscard]] AggregateReport run_gap_experiment(const ExperimentConfig& cfg);

/// Billiard-spectrum trajectories for alpha = 1 + t, t sampled on the torus.
[[nodiscard]] AggregateReport run_billiard_experiment(const ExperimentConfig& cfg);

/// Writes <out>_diffstats.csv, <out>_multtable.csv and <out>_series.json.
/// Returns the paths written.
std::vector<std::string> run_report(const ExperimentConfig& cfg);

/// Writes <out>.csv and <out>.json for a report; no-op if cfg.out is empty.
std::vector<std::string> write_report_files(const AggregateReport& report);

/// Per-N gap CSV: N,delta,delta_times_CN,<envelope columns>.
void write_gap_csv(std::ostream& out, const GapTrajectory& traj,
                   std::span<const DiffTrajectoryRow> c_rows, std::span<const Term> terms,
                   std::span<const Envelope> envelopes);

/// Parses "power:s" (eta(l) = l^-s) or an envelope name into a callable
/// over l = 1..n_max; `nonincreasing` reports whether the collapsed
/// evaluator may be used.
struct EtaFunction {
  std::vector<double> values;  ///< index l, 1..n_max
  bool nonincreasing = false;
  std::string name;
};
[[nodiscard]] EtaFunction make_eta(std::string_view spec, std::span<const Term> terms,
                                   std::span<const DiffTrajectoryRow> c_rows, double epsilon);

/// Default envelopes for a mode.
[[nodiscard]] std::vector<std::string> default_envelopes(std::string_view mode);

}  // namespace gaplab
