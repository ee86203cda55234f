#include "gaplab/gaps.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <string>

#include "gaplab/errors.hpp"

namespace gaplab {

namespace {

void require_pair(std::span<const Term> terms) {
  if (terms.size() < 2) throw InvalidArgument("minimal gap needs N >= 2");
}

}  // namespace

GapResult min_gap_bruteforce(std::span<const Term> terms, AlphaFixed alpha, std::size_t cap) {
  require_pair(terms);
  if (terms.size() > cap) {
    throw CapacityError("brute-force minimal gap limited to N <= " + std::to_string(cap));
  }
  Dyadic best{~std::uint64_t{0}};
  for (std::size_t m = 1; m < terms.size(); ++m) {
    for (std::size_t n = 0; n < m; ++n) {
      const Dyadic d = torus_norm(terms[m] - terms[n], alpha);
      if (d < best) best = d;
    }
  }
  return {best, best.raw == 0};
}

GapResult min_gap_sorted(std::span<const Term> terms, AlphaFixed alpha) {
  require_pair(terms);
  std::vector<std::uint64_t> points;
  points.reserve(terms.size());
  for (const Term t : terms) points.push_back(torus_point(t, alpha));
  std::sort(points.begin(), points.end());
  // Wraparound gap; wrapping subtraction gives 2^64 - (last - first).
  std::uint64_t best = points.front() - points.back();
  for (std::size_t i = 1; i < points.size(); ++i) {
    best = std::min(best, points[i] - points[i - 1]);
  }
  return {Dyadic{best}, best == 0};
}

GapTrajectory min_gap_trajectory(std::span<const Term> terms, AlphaFixed alpha) {
  require_pair(terms);
  GapTrajectory traj;
  traj.alpha = alpha;
  traj.ns.reserve(terms.size() - 1);
  traj.deltas.reserve(terms.size() - 1);

  std::set<std::uint64_t> points;
  std::uint64_t running = ~std::uint64_t{0};
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::uint64_t p = torus_point(terms[i], alpha);
    const auto [it, inserted] = points.insert(p);
    if (!inserted) {
      running = 0;
      if (traj.first_degenerate_n == 0) traj.first_degenerate_n = i + 1;
    } else if (points.size() >= 2) {
      const std::uint64_t pred = it == points.begin() ? *points.rbegin() : *std::prev(it);
      const auto next_it = std::next(it);
      const std::uint64_t succ = next_it == points.end() ? *points.begin() : *next_it;
      // Circular gaps; wrapping subtraction handles the 0/1 seam.
      running = std::min({running, p - pred, succ - p});
    }
    if (i >= 1) {
      traj.ns.push_back(i + 1);
      traj.deltas.push_back(Dyadic{running});
    }
  }
  return traj;
}

GapTrajectory min_gap_trajectory(IntegerSequence& seq, AlphaFixed alpha, std::size_t n_max) {
  return min_gap_trajectory(seq.prefix(n_max), alpha);
}

}  // namespace gaplab
