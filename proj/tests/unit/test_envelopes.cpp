#include <cmath>

#include "doctest.h"
#include "gaplab/envelopes.hpp"
#include "gaplab/errors.hpp"

using namespace gaplab;

namespace {

double env(EnvelopeKind k, double n, double c_n, double eps = 1.0) {
  return eval_envelope(Envelope{k, eps, false}, n, c_n, n * n);
}

}  // namespace

TEST_SUITE("envelopes") {
  TEST_CASE("multiplication table constant") {
    const double c = 1.0 - (1.0 + std::log(std::log(2.0))) / std::log(2.0);
    CHECK(multiplication_table_constant() == doctest::Approx(c).epsilon(1e-15));
    CHECK(multiplication_table_constant() == doctest::Approx(0.0860713).epsilon(1e-6));
  }

  TEST_CASE("log clamping") {
    CHECK(clamped_log(2.0) == 1.0);
    CHECK(clamped_log(3.0) == doctest::Approx(std::log(3.0)));
    CHECK(clamped_iterated_log(3.0, 2) == 1.0);
    CHECK(clamped_iterated_log(1e6, 2) == doctest::Approx(std::log(std::log(1e6))));
    CHECK(clamped_iterated_log(1e6, 3) == 1.0);
  }

  TEST_CASE("closed-form values") {
    CHECK(env(EnvelopeKind::th1_upper_plain, 10, 13) == doctest::Approx(1.0 / 13));
    CHECK(env(EnvelopeKind::th1_lower, 2, 5) == doctest::Approx(0.2));
    // log 3 > 1 so only the iterated log clamps.
    CHECK(env(EnvelopeKind::th1_lower, 3, 5) == doctest::Approx(1.0 / (5 * std::log(3.0))));

    const double n = 1e4;
    const double c = 1.0 - (1.0 + std::log(std::log(2.0))) / std::log(2.0);
    const double l1 = std::log(n), l2 = std::log(l1);
    const double l3 = std::max(1.0, std::log(l2));
    CHECK(env(EnvelopeKind::squares_up, n, 1) ==
          doctest::Approx(std::pow(l1, c - 1) * std::sqrt(l2) / (n * n)).epsilon(1e-12));
    CHECK(env(EnvelopeKind::squares_up, n, 1) == doctest::Approx(1.958526e-9).epsilon(1e-3));
    CHECK(env(EnvelopeKind::squares_low, n, 1) ==
          doctest::Approx(env(EnvelopeKind::squares_up, n, 1) / std::pow(l3, 2)));
    CHECK(env(EnvelopeKind::th1_lower, n, 7) == doctest::Approx(1.0 / (7 * l1 * l2 * l2)));
    CHECK(env(EnvelopeKind::conj_up, n, 7, 0.5) == doctest::Approx(std::sqrt(l1) / 7));
    CHECK(env(EnvelopeKind::allN, n, 7, 0.5) == doctest::Approx(100.0 / 7));
    CHECK(env(EnvelopeKind::billiard_up, n, 1) == doctest::Approx(std::pow(l1, 2 * c) / n));
    CHECK(env(EnvelopeKind::billiard_low, n, 1) == doctest::Approx(std::pow(l1, 2 * c) / (n * l1)));
    const double a = n * n;
    CHECK(env(EnvelopeKind::th1_upper_sizedep, n, 7) ==
          doctest::Approx(std::log(std::log(a)) / (7 * l1 * l2)));
  }

  TEST_CASE("larger epsilon lowers the lower envelope") {
    for (double n : {10.0, 1e3, 1e5}) {
      CHECK(env(EnvelopeKind::th1_lower, n, 100, 2.0) <= env(EnvelopeKind::th1_lower, n, 100, 1.0));
    }
  }

  TEST_CASE("names and sides") {
    for (auto k : {EnvelopeKind::th1_lower, EnvelopeKind::th1_upper_sizedep,
                   EnvelopeKind::th1_upper_plain, EnvelopeKind::conj_up, EnvelopeKind::allN,
                   EnvelopeKind::primes_cd, EnvelopeKind::squares_up, EnvelopeKind::squares_low,
                   EnvelopeKind::billiard_up, EnvelopeKind::billiard_low}) {
      CHECK(parse_envelope_kind(envelope_kind_name(k)) == k);
    }
    CHECK(envelope_side(EnvelopeKind::th1_lower) == EnvelopeSide::lower);
    CHECK(envelope_side(EnvelopeKind::conj_up) == EnvelopeSide::upper);
    CHECK(Envelope{EnvelopeKind::billiard_up, 1.0, true}.name() == "billiard_up_strong");
    CHECK_THROWS_AS((void)parse_envelope_kind("nope"), InvalidArgument);
    CHECK_THROWS_AS((void)eval_envelope(Envelope{EnvelopeKind::th1_upper_sizedep, 1, false}, 10, 5),
                    InvalidArgument);
  }
}
