#include "gaplab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "gaplab/billiard.hpp"
#include "gaplab/errors.hpp"
#include "gaplab/multtable.hpp"
#include "gaplab/rng.hpp"
#include "gaplab/series.hpp"
#include "json.hpp"

namespace gaplab {

namespace {

using json = nlohmann::ordered_json;

// Runs body(i) for i in [0, count) on `threads` workers. The first exception
// thrown by any task is rethrown after all workers have joined.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(count);
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::size_t window_of(std::size_t n) { return static_cast<std::size_t>(std::bit_width(n)) - 1; }

// The event of an envelope at one N.
bool is_event(EnvelopeKind kind, long double delta, double env) {
  switch (kind) {
    case EnvelopeKind::billiard_up:
      return delta >= env;
    case EnvelopeKind::billiard_low:
      return delta <= env;
    default:
      break;
  }
  return envelope_side(kind) == EnvelopeSide::lower ? delta < env : delta <= env;
}

std::string event_label(EnvelopeKind kind) {
  switch (kind) {
    case EnvelopeKind::billiard_up:
      return "delta >= envelope";
    case EnvelopeKind::billiard_low:
      return "delta <= envelope";
    default:
      break;
  }
  return envelope_side(kind) == EnvelopeSide::lower ? "delta < envelope" : "delta <= envelope";
}

std::string fmt_double(double v, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

struct PreparedEnvelope {
  Envelope env;
  std::vector<double> values;  // index N
};

struct TrialOutput {
  AlphaSummary summary;
  std::vector<std::vector<std::uint32_t>> bucket_events;  // [envelope][j]
};

// Shared evaluation of one trajectory (deltas indexed by N, valid from n_first).
TrialOutput evaluate_trial(const ExperimentConfig& cfg, std::span<const PreparedEnvelope> envs,
                           std::span<const long double> deltas, std::size_t n_first,
                           std::size_t buckets) {
  TrialOutput out;
  out.summary.envelopes.resize(envs.size());
  out.bucket_events.assign(envs.size(), std::vector<std::uint32_t>(buckets, 0));
  const auto j_max = static_cast<std::size_t>(std::max(cfg.dyadic_window_max, 0));
  for (std::size_t e = 0; e < envs.size(); ++e) {
    auto& res = out.summary.envelopes[e];
    std::vector<bool> window_hit(buckets, false);
    for (std::size_t n = n_first; n < deltas.size(); ++n) {
      if (!is_event(envs[e].env.kind, deltas[n], envs[e].values[n])) continue;
      const std::size_t j = window_of(n);
      ++out.bucket_events[e][j];
      res.last_event_n = n;
      if (n >= cfg.rate_n_min) ++res.events_from_min;
      if (n >= cfg.window_n_min && j <= j_max) window_hit[j] = true;
    }
    res.windows = static_cast<std::uint32_t>(std::count(window_hit.begin(), window_hit.end(), true));
  }
  return out;
}

AggregateReport aggregate(const ExperimentConfig& cfg, std::span<const PreparedEnvelope> envs,
                          std::vector<TrialOutput>& trials, std::size_t n_first,
                          std::size_t buckets) {
  AggregateReport report;
  report.config = cfg;
  const auto j_max = static_cast<std::size_t>(std::max(cfg.dyadic_window_max, 0));
  for (std::size_t e = 0; e < envs.size(); ++e) {
    EnvelopeSummary s;
    s.name = envs[e].env.name();
    s.side = envelope_side(envs[e].env.kind);
    s.bucket_pairs.assign(buckets, 0);
    s.bucket_events.assign(buckets, 0);
    s.window_histogram.assign(j_max + 2, 0);
    for (std::size_t n = n_first; n <= cfg.n_max; ++n) {
      s.bucket_pairs[window_of(n)] += trials.size();
      if (n >= cfg.rate_n_min) s.pairs_from_min += trials.size();
    }
    for (const auto& t : trials) {
      const auto& r = t.summary.envelopes[e];
      for (std::size_t j = 0; j < buckets; ++j) s.bucket_events[j] += t.bucket_events[e][j];
      s.events_from_min += r.events_from_min;
      if (r.events_from_min > 0) ++s.alphas_with_event_from_min;
      ++s.window_histogram[std::min<std::size_t>(r.windows, j_max + 1)];
      if (r.windows >= static_cast<std::uint32_t>(std::max(cfg.hits_required, 0))) {
        ++s.alphas_recurring;
      }
    }
    report.envelopes.push_back(std::move(s));
  }
  report.alphas.reserve(trials.size());
  for (auto& t : trials) report.alphas.push_back(std::move(t.summary));
  return report;
}

std::vector<PreparedEnvelope> prepare_envelopes(const ExperimentConfig& cfg,
                                                std::span<const Term> terms,
                                                std::span<const DiffTrajectoryRow> c_rows) {
  std::vector<std::string> names =
      cfg.envelopes.empty() ? default_envelopes(cfg.mode) : cfg.envelopes;
  std::vector<PreparedEnvelope> out;
  for (const auto& name : names) {
    PreparedEnvelope p;
    p.env.kind = parse_envelope_kind(name);
    p.env.epsilon = cfg.epsilon;
    p.env.strengthened = cfg.strengthened && (p.env.kind == EnvelopeKind::billiard_up ||
                                              p.env.kind == EnvelopeKind::billiard_low);
    p.values.assign(cfg.n_max + 1, 0.0);
    for (std::size_t n = 1; n <= cfg.n_max; ++n) {
      const double c = c_rows.empty() ? 1.0 : static_cast<double>(c_rows[n - 1].c_full);
      const std::optional<double> a =
          terms.empty() ? std::nullopt : std::optional<double>(static_cast<double>(terms[n - 1]));
      p.values[n] = eval_envelope(p.env, static_cast<double>(n), c, a);
    }
    out.push_back(std::move(p));
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw Error("failed writing '" + path + "'");
}

}  // namespace

std::vector<std::string> default_envelopes(std::string_view mode) {
  if (mode == "billiard") return {"billiard_low", "billiard_up"};
  return {"th1_lower", "th1_upper_plain", "th1_upper_sizedep", "conj_up"};
}

// --- config ---

ExperimentConfig ExperimentConfig::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  ExperimentConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "mode") cfg.mode = value.get<std::string>();
      else if (key == "sequence") cfg.sequence = SequenceSpec::parse(value.get<std::string>());
      else if (key == "n_max") cfg.n_max = value.get<std::size_t>();
      else if (key == "alpha_trials") cfg.alpha_trials = value.get<std::size_t>();
      else if (key == "master_seed") cfg.master_seed = value.get<std::uint64_t>();
      else if (key == "epsilon") cfg.epsilon = value.get<double>();
      else if (key == "envelopes") cfg.envelopes = value.get<std::vector<std::string>>();
      else if (key == "dyadic_window_max") cfg.dyadic_window_max = value.get<int>();
      else if (key == "hits_required") cfg.hits_required = value.get<int>();
      else if (key == "rate_n_min") cfg.rate_n_min = value.get<std::size_t>();
      else if (key == "window_n_min") cfg.window_n_min = value.get<std::size_t>();
      else if (key == "strengthened") cfg.strengthened = value.get<bool>();
      else if (key == "threads") cfg.threads = value.get<std::size_t>();
      else if (key == "out") cfg.out = value.get<std::string>();
      else if (key == "series_k") cfg.series_k = value.get<std::uint64_t>();
      else if (key == "series_b_max") cfg.series_b_max = value.get<std::uint64_t>();
      else if (key == "eta") cfg.eta = value.get<std::string>();
      else throw InvalidArgument("unknown config field '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config field has the wrong type: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::string ExperimentConfig::to_json() const {
  json j;
  j["mode"] = mode;
  j["sequence"] = sequence.to_string();
  j["n_max"] = n_max;
  j["alpha_trials"] = alpha_trials;
  j["master_seed"] = master_seed;
  j["epsilon"] = epsilon;
  j["envelopes"] = envelopes.empty() ? default_envelopes(mode) : envelopes;
  j["dyadic_window_max"] = dyadic_window_max;
  j["hits_required"] = hits_required;
  j["rate_n_min"] = rate_n_min;
  j["window_n_min"] = window_n_min;
  j["strengthened"] = strengthened;
  j["out"] = out;
  j["series_k"] = series_k;
  j["series_b_max"] = series_b_max;
  j["eta"] = eta;
  return j.dump(2);
}

void ExperimentConfig::validate() const {
  if (mode != "gaps" && mode != "billiard" && mode != "report") {
    throw InvalidArgument("mode must be gaps, billiard or report");
  }
  if (n_max < 2) throw InvalidArgument("n_max must be at least 2");
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (dyadic_window_max < 0 || dyadic_window_max > 62) {
    throw InvalidArgument("dyadic_window_max must lie in [0, 62]");
  }
  if (hits_required < 0) throw InvalidArgument("hits_required must be nonnegative");
  if (threads == 0) throw InvalidArgument("threads must be at least 1");
  for (const auto& name : envelopes) {
    const EnvelopeKind k = parse_envelope_kind(name);
    const bool billiard_kind = k == EnvelopeKind::billiard_up || k == EnvelopeKind::billiard_low;
    if (mode == "billiard" && !billiard_kind) {
      throw InvalidArgument("billiard mode accepts only billiard_* envelopes");
    }
    if (mode == "gaps" && billiard_kind) {
      throw InvalidArgument("billiard_* envelopes need mode billiard");
    }
  }
  if (mode == "report" && out.empty()) throw InvalidArgument("report mode needs an output prefix");
  if (series_k == 0 || series_b_max == 0) throw InvalidArgument("series cutoffs must be >= 1");
}

// --- summaries ---

double EnvelopeSummary::event_rate_from_min() const {
  return pairs_from_min == 0 ? 0.0
                             : static_cast<double>(events_from_min) / static_cast<double>(pairs_from_min);
}

double EnvelopeSummary::bucket_rate(std::size_t j) const {
  if (j >= bucket_pairs.size() || bucket_pairs[j] == 0) return 0.0;
  return static_cast<double>(bucket_events[j]) / static_cast<double>(bucket_pairs[j]);
}

double EnvelopeSummary::fraction_recurring(std::size_t trials) const {
  return trials == 0 ? 0.0 : static_cast<double>(alphas_recurring) / static_cast<double>(trials);
}

double EnvelopeSummary::fraction_with_windows(std::size_t trials, std::size_t w) const {
  if (trials == 0) return 0.0;
  std::uint64_t count = 0;
  for (std::size_t i = w; i < window_histogram.size(); ++i) count += window_histogram[i];
  return static_cast<double>(count) / static_cast<double>(trials);
}

const EnvelopeSummary& AggregateReport::envelope(std::string_view name) const {
  for (const auto& e : envelopes) {
    if (e.name == name) return e;
  }
  throw InvalidArgument("report has no envelope '" + std::string(name) + "'");
}

std::string AggregateReport::to_json() const {
  json j;
  j["config"] = json::parse(config.to_json());
  j["trials"] = alphas.size();
  json envs = json::array();
  for (std::size_t e = 0; e < envelopes.size(); ++e) {
    const auto& s = envelopes[e];
    json je;
    je["name"] = s.name;
    je["side"] = s.side == EnvelopeSide::lower ? "lower" : "upper";
    je["event"] = event_label(parse_envelope_kind(s.name.substr(0, s.name.find("_strong"))));
    je["rate_n_min"] = config.rate_n_min;
    je["pairs_from_min"] = s.pairs_from_min;
    je["events_from_min"] = s.events_from_min;
    je["event_rate_from_min"] = s.event_rate_from_min();
    je["alphas_with_event_from_min"] = s.alphas_with_event_from_min;
    je["window_n_min"] = config.window_n_min;
    je["hits_required"] = config.hits_required;
    je["alphas_recurring"] = s.alphas_recurring;
    je["fraction_recurring"] = s.fraction_recurring(alphas.size());
    je["window_histogram"] = s.window_histogram;
    json buckets = json::array();
    for (std::size_t b = 0; b < s.bucket_pairs.size(); ++b) {
      if (s.bucket_pairs[b] == 0) continue;
      json jb;
      jb["j"] = b;
      jb["pairs"] = s.bucket_pairs[b];
      jb["events"] = s.bucket_events[b];
      jb["rate"] = s.bucket_rate(b);
      buckets.push_back(std::move(jb));
    }
    je["buckets"] = std::move(buckets);
    envs.push_back(std::move(je));
  }
  j["envelopes"] = std::move(envs);
  return j.dump(2) + "\n";
}

std::string AggregateReport::to_csv() const {
  std::ostringstream os;
  os << "trial,seed,alpha_numerator,alpha,final_delta";
  for (const auto& e : envelopes) {
    os << ',' << e.name << "_last_event_n," << e.name << "_events_from_min," << e.name
       << "_windows";
  }
  os << "\r\n";
  for (const auto& a : alphas) {
    os << a.trial << ',' << a.seed << ',' << a.alpha_numerator << ',' << fmt_double(a.alpha)
       << ',' << a.final_delta;
    for (const auto& r : a.envelopes) {
      os << ',' << r.last_event_n << ',' << r.events_from_min << ',' << r.windows;
    }
    os << "\r\n";
  }
  return os.str();
}

// --- runs ---

AggregateReport run_gap_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.mode == "billiard") throw InvalidArgument("run_gap_experiment needs mode gaps");
  IntegerSequence seq(cfg.sequence);
  const std::vector<Term> terms(seq.prefix(cfg.n_max).begin(), seq.prefix(cfg.n_max).end());
  const auto c_rows = diff_trajectory(terms, false);
  const auto envs = prepare_envelopes(cfg, terms, c_rows);
  const std::size_t buckets = window_of(cfg.n_max) + 1;

  std::vector<TrialOutput> trials(cfg.alpha_trials);
  parallel_for(cfg.alpha_trials, cfg.threads, [&](std::size_t i) {
    const std::uint64_t seed = trial_seed(cfg.master_seed, i);
    SplitMix64 rng(seed);
    const AlphaFixed alpha = sample_alpha(rng);
    const GapTrajectory traj = min_gap_trajectory(terms, alpha);
    std::vector<long double> deltas(cfg.n_max + 1, 0.0L);
    for (std::size_t k = 0; k < traj.size(); ++k) deltas[traj.ns[k]] = traj.deltas[k].to_long_double();
    TrialOutput out = evaluate_trial(cfg, envs, deltas, 2, buckets);
    out.summary.trial = i;
    out.summary.seed = seed;
    out.summary.alpha_numerator = alpha.numerator;
    out.summary.alpha = alpha.to_double();
    out.summary.final_delta = traj.deltas.back().to_string();
    trials[i] = std::move(out);
  });
  return aggregate(cfg, envs, trials, 2, buckets);
}

AggregateReport run_billiard_experiment(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  c.mode = "billiard";
  c.validate();
  const auto envs = prepare_envelopes(c, {}, {});
  const std::size_t buckets = window_of(c.n_max) + 1;
  const BilliardEnvelopeOptions opts{c.epsilon, c.strengthened};

  std::vector<TrialOutput> trials(c.alpha_trials);
  parallel_for(c.alpha_trials, c.threads, [&](std::size_t i) {
    const std::uint64_t seed = trial_seed(c.master_seed, i);
    SplitMix64 rng(seed);
    const AlphaFixed t = sample_alpha(rng);
    const BilliardAlpha alpha = BilliardAlpha::shifted(t);
    const BilliardTrajectory traj = billiard_trajectory(alpha, c.n_max, opts);
    std::vector<long double> deltas(c.n_max + 1, 0.0L);
    for (const auto& row : traj.rows) deltas[row.n] = row.delta.to_long_double();
    TrialOutput out = evaluate_trial(c, envs, deltas, 1, buckets);
    out.summary.trial = i;
    out.summary.seed = seed;
    out.summary.alpha_numerator = t.numerator;
    out.summary.alpha = alpha.to_double();
    out.summary.final_delta = traj.rows.back().delta.to_string();
    trials[i] = std::move(out);
  });
  return aggregate(c, envs, trials, 1, buckets);
}

EtaFunction make_eta(std::string_view spec, std::span<const Term> terms,
                     std::span<const DiffTrajectoryRow> c_rows, double epsilon) {
  EtaFunction eta;
  eta.name = std::string(spec);
  const std::size_t n_max = c_rows.size();
  eta.values.assign(n_max + 1, 0.0);
  if (spec.starts_with("power:")) {
    double s = 0.0;
    try {
      s = std::stod(std::string(spec.substr(6)));
    } catch (const std::exception&) {
      throw ParseError("eta 'power:s' needs a numeric exponent");
    }
    if (!(s >= 0.0)) throw InvalidArgument("eta exponent must be nonnegative");
    for (std::size_t l = 1; l <= n_max; ++l) eta.values[l] = std::pow(static_cast<double>(l), -s);
    eta.nonincreasing = true;
    return eta;
  }
  Envelope env;
  env.kind = parse_envelope_kind(spec);
  env.epsilon = epsilon;
  for (std::size_t l = 1; l <= n_max; ++l) {
    eta.values[l] = eval_envelope(env, static_cast<double>(l),
                                  static_cast<double>(c_rows[l - 1].c_full),
                                  static_cast<double>(terms[l - 1]));
  }
  eta.nonincreasing = std::is_sorted(eta.values.begin() + 1, eta.values.end(), std::greater<>());
  return eta;
}

std::vector<std::string> run_report(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.out.empty()) throw InvalidArgument("report needs an output prefix");
  IntegerSequence seq(cfg.sequence);
  const std::vector<Term> terms(seq.prefix(cfg.n_max).begin(), seq.prefix(cfg.n_max).end());
  std::vector<std::string> written;

  const auto rows = diff_trajectory(terms, true);
  {
    std::ostringstream os;
    write_diffstats_csv(os, rows);
    written.push_back(cfg.out + "_diffstats.csv");
    write_text(written.back(), os.str());
  }
  {
    std::vector<std::uint64_t> ns;
    for (std::uint64_t n = 10; n <= cfg.n_max; n *= 10) ns.push_back(n);
    if (ns.empty() || ns.back() != cfg.n_max) ns.push_back(cfg.n_max);
    std::ostringstream os;
    write_multtable_csv(os, ns);
    written.push_back(cfg.out + "_multtable.csv");
    write_text(written.back(), os.str());
  }
  {
    const EtaFunction eta = make_eta(cfg.eta, terms, rows, cfg.epsilon);
    const auto first = first_occurrence(terms, cfg.series_k * cfg.series_b_max);
    const double sum = thcat_series_partial(
        first, [&](std::uint64_t l) { return eta.values[l]; }, eta.nonincreasing, cfg.series_k,
        cfg.series_b_max, cfg.n_max);
    SeriesReport r{"thcat[" + cfg.sequence.to_string() + ";eta=" + eta.name + "]", cfg.series_k,
                   cfg.series_b_max, cfg.n_max, sum};
    written.push_back(cfg.out + "_series.json");
    write_text(written.back(), series_report_json(r));
  }
  return written;
}

std::vector<std::string> write_report_files(const AggregateReport& report) {
  if (report.config.out.empty()) return {};
  std::vector<std::string> written{report.config.out + ".csv", report.config.out + ".json"};
  write_text(written[0], report.to_csv());
  write_text(written[1], report.to_json());
  return written;
}

void write_gap_csv(std::ostream& out, const GapTrajectory& traj,
                   std::span<const DiffTrajectoryRow> c_rows, std::span<const Term> terms,
                   std::span<const Envelope> envelopes) {
  out << "N,delta,delta_times_CN";
  for (const auto& e : envelopes) out << ',' << e.name();
  out << "\r\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const std::size_t n = traj.ns[k];
    const double c = static_cast<double>(c_rows[n - 1].c_full);
    out << n << ',' << traj.deltas[k].to_string() << ','
        << fmt_double(static_cast<double>(traj.deltas[k].to_long_double() * c));
    for (const auto& e : envelopes) {
      out << ',' << fmt_double(eval_envelope(e, static_cast<double>(n), c,
                                             static_cast<double>(terms[n - 1])));
    }
    out << "\r\n";
  }
}

}  // namespace gaplab
