#include <benchmark/benchmark.h>

#include <vector>

#include "gaplab/billiard.hpp"
#include "gaplab/diffstats.hpp"
#include "gaplab/gaps.hpp"
#include "gaplab/metricda.hpp"
#include "gaplab/multtable.hpp"
#include "gaplab/rng.hpp"
#include "gaplab/sequences.hpp"

namespace {

using namespace gaplab;

std::vector<Term> prefix(const SequenceSpec& spec, std::size_t n) {
  IntegerSequence s(spec);
  auto p = s.prefix(n);
  return {p.begin(), p.end()};
}

void BM_RepCountsDirect(benchmark::State& state) {
  const auto a = prefix(SequenceSpec::primes(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rep_counts_direct(a));
}
BENCHMARK(BM_RepCountsDirect)->Arg(500)->Arg(2000);

void BM_RepCountsFast(benchmark::State& state) {
  const auto a = prefix(SequenceSpec::primes(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rep_counts_fast(a));
}
BENCHMARK(BM_RepCountsFast)->Arg(500)->Arg(2000)->Arg(10000);

void BM_DiffTrajectory(benchmark::State& state) {
  const auto a = prefix(SequenceSpec::squares(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(diff_trajectory(a, false));
}
BENCHMARK(BM_DiffTrajectory)->Arg(1000)->Arg(5000);

void BM_MinGapSorted(benchmark::State& state) {
  const auto a = prefix(SequenceSpec::squares(), static_cast<std::size_t>(state.range(0)));
  SplitMix64 rng(1);
  const AlphaFixed alpha = sample_alpha(rng);
  for (auto _ : state) benchmark::DoNotOptimize(min_gap_sorted(a, alpha));
}
BENCHMARK(BM_MinGapSorted)->Arg(1000)->Arg(10000);

void BM_MinGapTrajectory(benchmark::State& state) {
  const auto a = prefix(SequenceSpec::squares(), static_cast<std::size_t>(state.range(0)));
  SplitMix64 rng(2);
  const AlphaFixed alpha = sample_alpha(rng);
  for (auto _ : state) benchmark::DoNotOptimize(min_gap_trajectory(a, alpha));
}
BENCHMARK(BM_MinGapTrajectory)->Arg(1000)->Arg(10000);

void BM_SquareDiffCount(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(square_diff_count(n));
}
BENCHMARK(BM_SquareDiffCount)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_BuildS(benchmark::State& state) {
  const auto k = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_S(k, Fraction(1, 10), true).measure());
}
BENCHMARK(BM_BuildS)->Arg(100)->Arg(1000);

void BM_BilliardTrajectory(benchmark::State& state) {
  const BilliardAlpha alpha = BilliardAlpha::from_rational(7, 5);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(billiard_trajectory(alpha, n));
}
BENCHMARK(BM_BilliardTrajectory)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
