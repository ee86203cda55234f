#include "gaplab/sequences.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include "gaplab/errors.hpp"
#include "gaplab/numtheory.hpp"

namespace gaplab {

namespace {

using u128 = unsigned __int128;
constexpr u128 kU128Max = ~u128{0};

// base^exp, saturating at kU128Max.
u128 pow_sat(u128 base, std::uint32_t exp) {
  u128 result = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (base != 0 && result > kU128Max / base) return kU128Max;
    result *= base;
  }
  return result;
}

int bit_length(u128 v) {
  int bits = 0;
  while (v != 0) {
    ++bits;
    v >>= 1;
  }
  return bits;
}

// floor(v^(1/q)) by integer Newton iteration started above the root.
u128 integer_root(u128 v, std::uint32_t q) {
  if (v == 0 || q == 1) return v;
  const int bits = bit_length(v);
  u128 x = u128{1} << ((bits + q - 1) / q);
  for (;;) {
    const u128 t = pow_sat(x, q - 1);
    const u128 y = ((q - 1) * x + v / t) / q;
    if (y >= x) break;
    x = y;
  }
  return x;
}

std::int64_t parse_int(std::string_view s, std::string_view what) {
  std::int64_t value = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || s.empty()) {
    throw ParseError("invalid " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

SequenceSpec SequenceSpec::squares() {
  SequenceSpec s;
  s.kind = SequenceKind::squares;
  return s;
}

SequenceSpec SequenceSpec::primes() {
  SequenceSpec s;
  s.kind = SequenceKind::primes;
  return s;
}

SequenceSpec SequenceSpec::quadratic(std::int64_t a, std::int64_t b, std::int64_t c) {
  SequenceSpec s;
  s.kind = SequenceKind::quadratic;
  s.quad_a = a;
  s.quad_b = b;
  s.quad_c = c;
  return s;
}

SequenceSpec SequenceSpec::geometric(std::uint64_t r, std::uint64_t a0) {
  SequenceSpec s;
  s.kind = SequenceKind::geometric;
  s.ratio = r;
  s.start = a0;
  return s;
}

SequenceSpec SequenceSpec::piatetski_shapiro(std::uint32_t p, std::uint32_t q) {
  SequenceSpec s;
  s.kind = SequenceKind::piatetski_shapiro;
  s.theta_num = p;
  s.theta_den = q;
  return s;
}

SequenceSpec SequenceSpec::from_file(std::filesystem::path p) {
  SequenceSpec s;
  s.kind = SequenceKind::file;
  s.path = p.string();
  return s;
}

SequenceSpec SequenceSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view args =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const auto need_args = [&](std::size_t count) {
    const auto parts = split(args, head == "ps" || head == "piatetski_shapiro" ? '/' : ',');
    if (colon == std::string_view::npos || parts.size() != count) {
      throw ParseError("sequence '" + std::string(head) + "' expects " +
                       std::to_string(count) + " parameters");
    }
    return parts;
  };
  if (head == "natural" && colon == std::string_view::npos) return natural();
  if (head == "squares" && colon == std::string_view::npos) return squares();
  if (head == "primes" && colon == std::string_view::npos) return primes();
  if (head == "quadratic") {
    const auto p = need_args(3);
    return quadratic(parse_int(p[0], "coefficient"), parse_int(p[1], "coefficient"),
                     parse_int(p[2], "coefficient"));
  }
  if (head == "geometric") {
    const auto p = need_args(2);
    const auto r = parse_int(p[0], "ratio");
    const auto a0 = parse_int(p[1], "start");
    if (r < 0 || a0 < 0) throw ParseError("geometric parameters must be positive");
    return geometric(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(a0));
  }
  if (head == "ps" || head == "piatetski_shapiro") {
    const auto p = need_args(2);
    const auto num = parse_int(p[0], "theta numerator");
    const auto den = parse_int(p[1], "theta denominator");
    if (num <= 0 || den <= 0 || num > 64 || den > 64) {
      throw ParseError("theta = p/q needs 1 <= p, q <= 64");
    }
    return piatetski_shapiro(static_cast<std::uint32_t>(num), static_cast<std::uint32_t>(den));
  }
  if (head == "file") {
    if (args.empty()) throw ParseError("file sequence needs a path");
    return from_file(std::string(args));
  }
  throw ParseError("unknown sequence '" + std::string(text) + "'");
}

std::string SequenceSpec::to_string() const {
  switch (kind) {
    case SequenceKind::natural:
      return "natural";
    case SequenceKind::squares:
      return "squares";
    case SequenceKind::primes:
      return "primes";
    case SequenceKind::quadratic:
      return "quadratic:" + std::to_string(quad_a) + "," + std::to_string(quad_b) + "," +
             std::to_string(quad_c);
    case SequenceKind::geometric:
      return "geometric:" + std::to_string(ratio) + "," + std::to_string(start);
    case SequenceKind::piatetski_shapiro:
      return "ps:" + std::to_string(theta_num) + "/" + std::to_string(theta_den);
    case SequenceKind::file:
      return "file:" + path;
  }
  return "unknown";
}

Term floor_rational_power(std::uint64_t n, std::uint32_t p, std::uint32_t q) {
  if (q == 0) throw InvalidArgument("theta denominator must be positive");
  const u128 power = pow_sat(n, p);
  if (power >= (u128{1} << 127)) {
    throw OverflowError("n^p overflows 127 bits for n = " + std::to_string(n));
  }
  const u128 root = integer_root(power, q);
  if (root > kMaxTerm) throw OverflowError("floor(n^theta) exceeds 2^63-1");
  return static_cast<Term>(root);
}

std::vector<Term> first_primes(std::size_t n) {
  std::vector<Term> primes;
  if (n == 0) return primes;
  const double dn = static_cast<double>(n);
  std::uint64_t bound = n < 6 ? 15 : static_cast<std::uint64_t>(dn * (std::log(dn) + std::log(std::log(dn)))) + 10;
  for (;;) {
    primes = primes_up_to(bound);
    if (primes.size() >= n) break;
    bound *= 2;
  }
  primes.resize(n);
  return primes;
}

std::vector<Term> parse_sequence_text(std::string_view text) {
  std::vector<Term> terms;
  std::size_t line_no = 0;
  std::size_t blank_run = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      ++blank_run;
      continue;
    }
    if (blank_run > 0 && !terms.empty()) {
      throw ParseError("blank line inside sequence file before line " + std::to_string(line_no));
    }
    blank_run = 0;
    Term value = 0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
    if (ec != std::errc{} || ptr != line.data() + line.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": not a base-10 integer: '" +
                       std::string(line) + "'");
    }
    if (value == 0 || value > kMaxTerm) {
      throw ParseError("line " + std::to_string(line_no) + ": value outside [1, 2^63-1]");
    }
    if (!terms.empty() && value <= terms.back()) {
      throw ParseError("line " + std::to_string(line_no) + ": values must be strictly ascending");
    }
    terms.push_back(value);
  }
  if (terms.empty()) throw ParseError("sequence file contains no terms");
  return terms;
}

std::vector<Term> read_sequence_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open sequence file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sequence_text(buf.str());
}

IntegerSequence::IntegerSequence(SequenceSpec spec) : spec_(std::move(spec)) {
  switch (spec_.kind) {
    case SequenceKind::natural:
    case SequenceKind::squares:
    case SequenceKind::primes:
      break;
    case SequenceKind::quadratic: {
      const auto a = spec_.quad_a, b = spec_.quad_b, c = spec_.quad_c;
      if (a < 1) throw InvalidArgument("quadratic sequence needs leading coefficient a >= 1");
      // f(n+1) - f(n) = a(2n+1) + b is increasing in n, so n = 1 decides.
      if (3 * a + b <= 0) throw InvalidArgument("quadratic sequence is not increasing on n >= 1");
      if (a + b + c < 1) throw InvalidArgument("quadratic sequence must be positive at n = 1");
      break;
    }
    case SequenceKind::geometric:
      if (spec_.ratio < 2) throw InvalidArgument("geometric sequence needs r >= 2");
      if (spec_.start < 1) throw InvalidArgument("geometric sequence needs a0 >= 1");
      break;
    case SequenceKind::piatetski_shapiro:
      if (spec_.theta_den == 0 || spec_.theta_num <= spec_.theta_den) {
        throw InvalidArgument("Piatetski-Shapiro sequence needs theta > 1");
      }
      break;
    case SequenceKind::file:
      cache_ = read_sequence_file(spec_.path);
      break;
  }
}

Term IntegerSequence::generate(std::size_t n) const {
  const auto un = static_cast<u128>(n);
  switch (spec_.kind) {
    case SequenceKind::natural:
      return n;
    case SequenceKind::squares: {
      const u128 v = un * un;
      if (v > kMaxTerm) throw OverflowError("a_n = n^2 exceeds 2^63-1");
      return static_cast<Term>(v);
    }
    case SequenceKind::quadratic: {
      const __int128 v = static_cast<__int128>(spec_.quad_a) * un * un +
                         static_cast<__int128>(spec_.quad_b) * static_cast<__int128>(n) +
                         spec_.quad_c;
      if (v > static_cast<__int128>(kMaxTerm)) throw OverflowError("quadratic term exceeds 2^63-1");
      return static_cast<Term>(v);
    }
    case SequenceKind::geometric: {
      u128 v = spec_.start;
      for (std::size_t i = 0; i < n; ++i) {
        v *= spec_.ratio;
        if (v > kMaxTerm) {
          throw OverflowError("geometric term a_" + std::to_string(n) + " exceeds 2^63-1");
        }
      }
      return static_cast<Term>(v);
    }
    case SequenceKind::piatetski_shapiro:
      return floor_rational_power(n, spec_.theta_num, spec_.theta_den);
    case SequenceKind::primes:
    case SequenceKind::file:
      break;
  }
  throw InvalidArgument("generate() is not defined for this sequence kind");
}

void IntegerSequence::extend_to(std::size_t n) {
  if (n <= cache_.size()) return;
  if (spec_.kind == SequenceKind::file) {
    throw InvalidArgument("sequence file has only " + std::to_string(cache_.size()) +
                          " terms, " + std::to_string(n) + " requested");
  }
  if (spec_.kind == SequenceKind::primes) {
    if (n > (std::size_t{1} << 27)) throw CapacityError("too many primes requested");
    cache_ = first_primes(n);
    return;
  }
  cache_.reserve(n);
  for (std::size_t i = cache_.size() + 1; i <= n; ++i) {
    const Term t = generate(i);
    if (!cache_.empty() && t <= cache_.back()) {
      throw InvalidArgument("generator produced a non-increasing term at n = " +
                            std::to_string(i) + "; duplicates are rejected");
    }
    cache_.push_back(t);
  }
}

std::span<const Term> IntegerSequence::prefix(std::size_t n) {
  if (n == 0) throw InvalidArgument("prefix length must be at least 1");
  extend_to(n);
  return std::span<const Term>(cache_.data(), n);
}

IntegerSequence make_sequence(const SequenceSpec& spec) { return IntegerSequence(spec); }

}  // namespace gaplab
