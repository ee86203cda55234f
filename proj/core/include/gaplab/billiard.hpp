#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gaplab/envelopes.hpp"
#include "gaplab/numtheory.hpp"

namespace gaplab {

/// Unsigned fixed point with 64 fractional bits in a 128-bit word.
struct Fixed128 {
  unsigned __int128 raw = 0;

  friend constexpr auto operator<=>(const Fixed128&, const Fixed128&) = default;

  [[nodiscard]] long double to_long_double() const;
  [[nodiscard]] double to_double() const { return static_cast<double>(to_long_double()); }
  [[nodiscard]] std::string to_string() const;

  static Fixed128 from_integer(std::uint64_t v);
  static Fixed128 from_double(double v);  ///< floor(v * 2^64)
};

/// Aspect ratio alpha > 0 with integer part at most 2^32.
struct BilliardAlpha {
  Fixed128 value;

  static BilliardAlpha from_double(double alpha);
  static BilliardAlpha from_rational(std::uint64_t p, std::uint64_t q);  ///< nearest dyadic
  /// 1 + t, mapping a torus point into [1, 2).
  static BilliardAlpha shifted(AlphaFixed t);

  [[nodiscard]] double to_double() const { return value.to_double(); }
};

struct SpectrumEntry {
  Fixed128 value;  ///< alpha m^2 + n^2, exact
  std::uint32_t m = 0;
  std::uint32_t n = 0;
};

/// The sorted values {alpha m^2 + n^2 : m, n >= 1} up to a cutoff.
struct Spectrum {
  BilliardAlpha alpha;
  Fixed128 cutoff;
  std::vector<SpectrumEntry> entries;
  /// Indices i with entries[i].value == entries[i + 1].value.
  std::vector<std::size_t> collisions;

  [[nodiscard]] bool has_collision() const { return !collisions.empty(); }
  [[nodiscard]] std::size_t size() const { return entries.size(); }
};

inline constexpr std::size_t kDefaultSpectrumCapacity = std::size_t{1} << 27;

/// All alpha m^2 + n^2 <= cutoff, sorted by exact value (ties by m).
/// Throws CapacityError if the expected count exceeds `capacity`.
[[nodiscard]] Spectrum spectrum(BilliardAlpha alpha, double cutoff,
                                std::size_t capacity = kDefaultSpectrumCapacity);

/// pi * cutoff / (4 sqrt(alpha)), the leading lattice-point count.
[[nodiscard]] double weyl_count(double alpha, double cutoff);

/// min{lambda_{k+1} - lambda_k : 1 <= k <= N}. Needs N + 1 entries without
/// collisions among them (InsufficientDataError / CollisionError).
[[nodiscard]] Fixed128 min_gap_spectrum(const Spectrum& s, std::size_t n);

struct BilliardRow {
  std::size_t n = 0;
  Fixed128 delta;
  double up_envelope = 0.0;
  double low_envelope = 0.0;
  bool hit_up = false;      ///< delta >= up_envelope (the recurring event)
  bool exceed_low = false;  ///< delta <= low_envelope (should happen finitely often)
};

struct BilliardTrajectory {
  BilliardAlpha alpha;
  double cutoff = 0.0;
  std::vector<BilliardRow> rows;  ///< N = 1..N_max
};

struct BilliardEnvelopeOptions {
  double epsilon = 1.0;
  bool strengthened = false;
};

/// delta_min^(alpha)(N) for N = 1..N_max with both envelopes. The cutoff
/// starts at 4 sqrt(alpha) (N_max + 2) / pi plus a margin and grows until
/// the spectrum has N_max + 1 entries.
[[nodiscard]] BilliardTrajectory billiard_trajectory(BilliardAlpha alpha, std::size_t n_max,
                                                     BilliardEnvelopeOptions opts = {});

/// CSV: N,delta,up_envelope,low_envelope,hit_up,exceed_low
void write_billiard_csv(std::ostream& out, const BilliardTrajectory& t);

}  // namespace gaplab
