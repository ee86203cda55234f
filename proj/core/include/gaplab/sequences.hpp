#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gaplab {

/// A sequence term. Terms are positive and at most kMaxTerm.
using Term = std::uint64_t;
inline constexpr Term kMaxTerm = (Term{1} << 63) - 1;

enum class SequenceKind {
  natural,
  squares,
  primes,
  quadratic,          // a n^2 + b n + c
  geometric,          // a0 * r^n
  piatetski_shapiro,  // floor(n^(p/q))
  file,
};

/// Generator tag plus parameters.
///
/// Text form (used by the CLI and config files):
///   natural | squares | primes | quadratic:a,b,c | geometric:r,a0 |
///   ps:p/q | file:<path>
struct SequenceSpec {
  SequenceKind kind = SequenceKind::natural;
  std::int64_t quad_a = 1, quad_b = 0, quad_c = 0;
  std::uint64_t ratio = 2, start = 1;
  std::uint32_t theta_num = 3, theta_den = 2;
  std::string path;

  static SequenceSpec parse(std::string_view text);
  [[nodiscard]] std::string to_string() const;

  static SequenceSpec natural() { return {}; }
  static SequenceSpec squares();
  static SequenceSpec primes();
  static SequenceSpec quadratic(std::int64_t a, std::int64_t b, std::int64_t c);
  static SequenceSpec geometric(std::uint64_t r, std::uint64_t a0);
  static SequenceSpec piatetski_shapiro(std::uint32_t p, std::uint32_t q);
  static SequenceSpec from_file(std::filesystem::path p);
};

/// A strictly increasing sequence of positive integers with a lazily
/// extended materialized prefix.
///
/// Extension mutates the cache; share an instance across threads only after
/// the largest prefix needed has been materialized.
class IntegerSequence {
 public:
  /// Validates the parameters. Throws InvalidArgument, or ParseError for
  /// file sequences whose contents are malformed.
  explicit IntegerSequence(SequenceSpec spec);

  [[nodiscard]] const SequenceSpec& spec() const { return spec_; }

  /// The first n terms a_1..a_n. The span is invalidated by later extension.
  /// Throws OverflowError if a term would exceed kMaxTerm, InvalidArgument if
  /// n == 0 or a file sequence has fewer than n terms.
  std::span<const Term> prefix(std::size_t n);

  /// a_n, 1-based.
  Term term(std::size_t n) { return prefix(n)[n - 1]; }

  [[nodiscard]] std::size_t materialized() const { return cache_.size(); }

 private:
  void extend_to(std::size_t n);
  Term generate(std::size_t n) const;

  SequenceSpec spec_;
  std::vector<Term> cache_;
};

[[nodiscard]] IntegerSequence make_sequence(const SequenceSpec& spec);

/// The first n primes.
[[nodiscard]] std::vector<Term> first_primes(std::size_t n);

/// floor(n^(p/q)) computed exactly with integer arithmetic.
/// Throws OverflowError if n^p does not fit in 127 bits.
[[nodiscard]] Term floor_rational_power(std::uint64_t n, std::uint32_t p, std::uint32_t q);

/// Parses a sequence file: one base-10 integer per line, strictly ascending,
/// each in [1, 2^63-1]. Blank trailing lines are ignored.
[[nodiscard]] std::vector<Term> read_sequence_file(const std::filesystem::path& path);
[[nodiscard]] std::vector<Term> parse_sequence_text(std::string_view text);

}  // namespace gaplab
