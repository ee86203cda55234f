// gaplab: command-line front end for the minimal-gap toolkit.
//
// Exit codes: 0 success, 2 bad configuration or input, 3 capacity exceeded,
// 1 anything else.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gaplab/billiard.hpp"
#include "gaplab/diffstats.hpp"
#include "gaplab/envelopes.hpp"
#include "gaplab/errors.hpp"
#include "gaplab/experiments.hpp"
#include "gaplab/gaps.hpp"
#include "gaplab/multtable.hpp"
#include "gaplab/rng.hpp"
#include "gaplab/sequences.hpp"
#include "gaplab/series.hpp"

namespace {

using namespace gaplab;

constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;

struct Options {
  std::string seq = "squares";
  std::size_t n_max = 1000;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  double epsilon = 1.0;
  std::string out;
  std::string config;
  std::string alpha;
  std::uint64_t k_max = 1000;
  std::uint64_t b_max = 100;
  std::string eta = "power:3";
  std::string mode = "gaps";
  std::size_t threads = 1;
  std::vector<std::string> envelopes;
  std::vector<std::uint64_t> hxyz;
  bool strengthened = false;
};

// Writes to --out when given, otherwise stdout.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << text;
}

std::vector<Term> load_terms(const Options& o) {
  IntegerSequence seq(SequenceSpec::parse(o.seq));
  auto p = seq.prefix(o.n_max);
  return {p.begin(), p.end()};
}

// "p/q" or a decimal in [0, 1); empty samples from --seed.
AlphaFixed torus_alpha(const Options& o) {
  if (o.alpha.empty()) {
    SplitMix64 rng(trial_seed(o.seed, 0));
    return sample_alpha(rng);
  }
  if (auto slash = o.alpha.find('/'); slash != std::string::npos) {
    return AlphaFixed::from_rational(std::stoull(o.alpha.substr(0, slash)),
                                     std::stoull(o.alpha.substr(slash + 1)));
  }
  return AlphaFixed::from_double(std::stod(o.alpha));
}

BilliardAlpha billiard_alpha(const Options& o) {
  if (o.alpha.empty()) {
    SplitMix64 rng(trial_seed(o.seed, 0));
    return BilliardAlpha::shifted(sample_alpha(rng));
  }
  if (auto slash = o.alpha.find('/'); slash != std::string::npos) {
    return BilliardAlpha::from_rational(std::stoull(o.alpha.substr(0, slash)),
                                        std::stoull(o.alpha.substr(slash + 1)));
  }
  return BilliardAlpha::from_double(std::stod(o.alpha));
}

int cmd_gen(const Options& o) {
  std::ostringstream os;
  for (Term t : load_terms(o)) os << t << '\n';
  emit(o.out, os.str());
  return 0;
}

int cmd_diffstats(const Options& o) {
  const auto terms = load_terms(o);
  std::ostringstream os;
  write_diffstats_csv(os, diff_trajectory(terms, true));
  emit(o.out, os.str());
  return 0;
}

int cmd_gaps(const Options& o) {
  const auto terms = load_terms(o);
  const AlphaFixed alpha = torus_alpha(o);
  const auto traj = min_gap_trajectory(terms, alpha);
  const auto rows = diff_trajectory(terms, false);
  std::vector<Envelope> envs;
  for (const auto& name : o.envelopes.empty() ? default_envelopes("gaps") : o.envelopes) {
    envs.push_back(Envelope{parse_envelope_kind(name), o.epsilon, false});
  }
  std::ostringstream os;
  write_gap_csv(os, traj, rows, terms, envs);
  emit(o.out, os.str());
  std::cerr << "alpha numerator " << alpha.numerator << " (" << alpha.to_double() << ")\n";
  return 0;
}

int cmd_series(const Options& o) {
  const auto terms = load_terms(o);
  const auto rows = diff_trajectory(terms, false);
  const EtaFunction eta = make_eta(o.eta, terms, rows, o.epsilon);
  const auto first = first_occurrence(terms, o.k_max * o.b_max);
  const double sum = thcat_series_partial(
      first, [&](std::uint64_t l) { return eta.values[l]; }, eta.nonincreasing, o.k_max,
      o.b_max, o.n_max);
  SeriesReport r{"thcat[" + SequenceSpec::parse(o.seq).to_string() + ";eta=" + eta.name + "]",
                 o.k_max, o.b_max, o.n_max, sum};
  emit(o.out, series_report_json(r));
  return 0;
}

int cmd_multtable(const Options& o) {
  if (!o.hxyz.empty()) {
    if (o.hxyz.size() != 3) throw InvalidArgument("--hxyz takes x,y,z");
    const HQuery q{o.hxyz[0], o.hxyz[1], o.hxyz[2]};
    std::ostringstream os;
    os << "x,y,z,H,in_ford_window\r\n"
       << q.x << ',' << q.y << ',' << q.z << ',' << H_count(q) << ','
       << (q.in_ford_window() ? "true" : "false") << "\r\n";
    emit(o.out, os.str());
    return 0;
  }
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = 10; n <= o.n_max; n *= 10) ns.push_back(n);
  if (ns.empty() || ns.back() != o.n_max) ns.push_back(o.n_max);
  std::ostringstream os;
  write_multtable_csv(os, ns);
  emit(o.out, os.str());
  return 0;
}

int cmd_billiard(const Options& o) {
  const auto traj =
      billiard_trajectory(billiard_alpha(o), o.n_max, {o.epsilon, o.strengthened});
  std::ostringstream os;
  write_billiard_csv(os, traj);
  emit(o.out, os.str());
  return 0;
}

int cmd_experiment(const Options& o, const CLI::App& sub) {
  ExperimentConfig cfg;
  if (!o.config.empty()) {
    std::ifstream f(o.config, std::ios::binary);
    if (!f) throw ParseError("cannot read config '" + o.config + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    cfg = ExperimentConfig::from_json(buf.str());
  }
  // Explicit flags override the config file.
  if (sub.count("--mode")) cfg.mode = o.mode;
  if (sub.count("--seq")) cfg.sequence = SequenceSpec::parse(o.seq);
  if (sub.count("--n-max")) cfg.n_max = o.n_max;
  if (sub.count("--trials")) cfg.alpha_trials = o.trials;
  if (sub.count("--seed")) cfg.master_seed = o.seed;
  if (sub.count("--epsilon")) cfg.epsilon = o.epsilon;
  if (sub.count("--out")) cfg.out = o.out;
  if (sub.count("--threads")) cfg.threads = o.threads;
  if (sub.count("--envelope")) cfg.envelopes = o.envelopes;
  if (sub.count("--strengthened")) cfg.strengthened = o.strengthened;
  if (sub.count("--K")) cfg.series_k = o.k_max;
  if (sub.count("--b-max")) cfg.series_b_max = o.b_max;
  if (sub.count("--eta")) cfg.eta = o.eta;
  cfg.validate();

  if (cfg.mode == "report") {
    for (const auto& path : run_report(cfg)) std::cerr << "wrote " << path << '\n';
    return 0;
  }
  const AggregateReport report =
      cfg.mode == "billiard" ? run_billiard_experiment(cfg) : run_gap_experiment(cfg);
  if (cfg.out.empty()) {
    std::cout << report.to_json();
  } else {
    for (const auto& path : write_report_files(report)) std::cerr << "wrote " << path << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gaplab: minimal gaps of (a_n alpha) mod 1, difference sets and billiard spectra"};
  app.require_subcommand(1);
  Options o;

  auto add_seq = [&](CLI::App* s) {
    s->add_option("--seq", o.seq,
                  "natural | squares | primes | quadratic:a,b,c | geometric:r,a0 | ps:p/q | "
                  "file:PATH")
        ->capture_default_str();
    s->add_option("--n-max", o.n_max, "Truncation length N_max")->capture_default_str();
  };
  auto add_out = [&](CLI::App* s) { s->add_option("--out", o.out, "Output path (default stdout)"); };

  auto* gen = app.add_subcommand("gen", "Print the first N_max terms of a sequence");
  add_seq(gen);
  add_out(gen);

  auto* diff = app.add_subcommand("diffstats", "C+_N, C_N and E_N for N = 1..N_max as CSV");
  add_seq(diff);
  add_out(diff);

  auto* gaps = app.add_subcommand("gaps", "Minimal-gap trajectory for one alpha as CSV");
  add_seq(gaps);
  add_out(gaps);
  gaps->add_option("--alpha", o.alpha, "alpha in [0,1) as decimal or p/q (default: sampled)");
  gaps->add_option("--seed", o.seed, "Seed used when --alpha is absent")->capture_default_str();
  gaps->add_option("--epsilon", o.epsilon)->capture_default_str();
  gaps->add_option("--envelope", o.envelopes, "Envelope columns (repeatable)");

  auto* series = app.add_subcommand("series", "Truncated Catlin-type series as JSON");
  add_seq(series);
  add_out(series);
  series->add_option("--K", o.k_max, "Cutoff in k")->capture_default_str();
  series->add_option("--b-max", o.b_max, "Cutoff in b")->capture_default_str();
  series->add_option("--eta", o.eta, "power:s or an envelope name")->capture_default_str();
  series->add_option("--epsilon", o.epsilon)->capture_default_str();

  auto* mt = app.add_subcommand("multtable", "Multiplication-table counts as CSV");
  mt->add_option("--n-max", o.n_max, "Largest table size")->capture_default_str();
  mt->add_option("--hxyz", o.hxyz, "Count H(x,y,z) instead")->delimiter(',')->expected(3);
  add_out(mt);

  auto* bil = app.add_subcommand("billiard", "Billiard-spectrum gap trajectory as CSV");
  bil->add_option("--n-max", o.n_max, "Number of spectrum gaps")->capture_default_str();
  bil->add_option("--alpha", o.alpha, "alpha as decimal or p/q (default: 1 + sampled)");
  bil->add_option("--seed", o.seed)->capture_default_str();
  bil->add_option("--epsilon", o.epsilon)->capture_default_str();
  bil->add_flag("--strengthened", o.strengthened, "Use the log2-strengthened envelopes");
  add_out(bil);

  auto* exp = app.add_subcommand("experiment", "Seeded Monte Carlo run over many alpha");
  add_seq(exp);
  exp->add_option("--out", o.out, "Output prefix: writes <out>.csv and <out>.json");
  exp->add_option("--config", o.config, "JSON config file");
  exp->add_option("--mode", o.mode, "gaps | billiard | report");
  exp->add_option("--trials", o.trials, "Number of sampled alpha");
  exp->add_option("--seed", o.seed, "Master seed");
  exp->add_option("--epsilon", o.epsilon);
  exp->add_option("--threads", o.threads, "Worker threads");
  exp->add_option("--envelope", o.envelopes, "Envelopes (repeatable)");
  exp->add_flag("--strengthened", o.strengthened);
  exp->add_option("--K", o.k_max);
  exp->add_option("--b-max", o.b_max);
  exp->add_option("--eta", o.eta);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*gen) return cmd_gen(o);
    if (*diff) return cmd_diffstats(o);
    if (*gaps) return cmd_gaps(o);
    if (*series) return cmd_series(o);
    if (*mt) return cmd_multtable(o);
    if (*bil) return cmd_billiard(o);
    if (*exp) return cmd_experiment(o, *exp);
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const OverflowError& e) {
    std::cerr << "overflow: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid number: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
