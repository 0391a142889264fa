#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "../oracles.hpp"
#include "qie/precision.hpp"
#include "qie/specfun.hpp"

using qie::DomainError;
using qie::NumericalError;

TEST_SUITE("specfun") {
  TEST_CASE("log_binomial small cases") {
    CHECK(qie::log_binomial(6, 2) == doctest::Approx(std::log(15.0)).epsilon(1e-15));
    CHECK(qie::log_binomial(0, 0) == 0.0);
    CHECK(qie::log_binomial(10, 10) == 0.0);
  }

  TEST_CASE("log_binomial matches Pascal's triangle") {
    for (int n : {5, 30, 66, 67, 120}) {
      const auto row = oracle::pascal_row(n);
      for (int k = 0; k <= n; ++k) {
        const double want = static_cast<double>(std::log(row[k]));
        CHECK(qie::log_binomial(n, k) == doctest::Approx(want).epsilon(1e-13));
      }
    }
  }

  TEST_CASE("log_binomial(300, 150) against ratio accumulation") {
    long double acc = 0;
    for (int i = 0; i < 150; ++i) acc += std::log(static_cast<long double>(300 - i) / (i + 1));
    CHECK(oracle::rel_err(qie::log_binomial(300, 150), static_cast<double>(acc)) < 1e-12);
  }

  TEST_CASE("log_binomial rejects invalid input") {
    CHECK_THROWS_AS(qie::log_binomial(3, 4), DomainError);
    CHECK_THROWS_AS(qie::log_binomial(-1, 0), DomainError);
    CHECK_THROWS_AS(qie::log_binomial(4, -1), DomainError);
  }

  TEST_CASE("log_sum_exp") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(qie::log_sum_exp(std::vector<double>{0, 0}) == doctest::Approx(std::numbers::ln2));
    CHECK(qie::log_sum_exp(std::vector<double>{-inf, 3}) == 3.0);
    CHECK(qie::log_sum_exp(std::vector<double>{700, 700, 700}) ==
          doctest::Approx(700 + std::log(3.0)).epsilon(1e-15));
    CHECK(qie::log_sum_exp(std::vector<double>{-inf, -inf}) == -inf);
    CHECK(qie::log_sum_exp(std::vector<double>{-1000, -1001}) ==
          doctest::Approx(-1000 + std::log1p(std::exp(-1.0))).epsilon(1e-15));
    CHECK_THROWS_AS(qie::log_sum_exp(std::vector<double>{}), DomainError);
  }

  TEST_CASE("signed_log_sum cancels") {
    using L = qie::LogNumber<double>;
    const std::vector<L> terms = {L::from_value(5.0), L::from_value(-3.0), L::from_value(0.5)};
    CHECK(qie::signed_log_sum<double>(terms).value() == doctest::Approx(2.5));
    const std::vector<L> zero = {L::from_value(2.0), L::from_value(-2.0)};
    CHECK(qie::signed_log_sum<double>(zero).is_zero());
  }

  TEST_CASE("catalan_log") {
    CHECK(qie::catalan_log(0) == 0.0);
    CHECK(qie::catalan_log(4) == doctest::Approx(std::log(14.0)).epsilon(1e-15));
    const auto table = oracle::catalan_table(35);
    for (int r = 0; r <= 35; ++r) {
      CHECK(qie::catalan_log(r) ==
            doctest::Approx(std::log(static_cast<double>(table[r]))).epsilon(1e-13));
    }
    const double exact = qie::catalan_log(200);
    const double asym = std::log(std::pow(2.0, 400)) - std::log(200.0 * std::sqrt(200 * std::numbers::pi));
    CHECK(std::abs(exact - asym) / std::abs(asym) < 0.004);
    CHECK(qie::catalan_log_asymptotic(200) == doctest::Approx(asym).epsilon(1e-13));
  }

  TEST_CASE("hyp2f1 trivial and terminating values") {
    CHECK(qie::hyp2f1(0.3, 0.7, 1.9, 0.0) == 1.0);
    CHECK(qie::hyp2f1(-1.0, 2.0, 3.0, -1.0) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
    for (int N : {1, 4, 9, 17}) {
      for (double z : {-7.5, -1.0, -0.2, 0.6}) {
        const double want = static_cast<double>(oracle::terminating_2f1(N, 1.5, 2.25, z));
        // Sum of |terms|: the error is bounded relative to it when signs alternate.
        const double scale = static_cast<double>(oracle::terminating_2f1(N, 1.5, 2.25, -std::abs(z)));
        CHECK(std::abs(qie::hyp2f1(-double(N), 1.5, 2.25, z) - want) < 1e-14 * scale);
        // Symmetric in a and b.
        CHECK(std::abs(qie::hyp2f1(1.5, -double(N), 2.25, z) - want) < 1e-14 * scale);
      }
    }
  }

  TEST_CASE("hyp2f1 against high-precision references") {
    for (const auto& r : oracle::hyp2f1_references()) {
      CAPTURE(r.a);
      CAPTURE(r.z);
      CHECK(oracle::rel_err(qie::hyp2f1(r.a, r.b, r.c, r.z), r.value) < 1e-11);
    }
  }

  TEST_CASE("hyp2f1(1, 1; 2; z) = -ln(1 - z) / z") {
    for (double z : {-0.5, -1.0, -3.0, 0.25, 0.9}) {
      CHECK(oracle::rel_err(qie::hyp2f1(1.0, 1.0, 2.0, z), -std::log1p(-z) / z) < 1e-12);
    }
  }

  TEST_CASE("hyp2f1 in extended precision") {
    using F = qie::precision::Float<50>;
    const F v = qie::hyp2f1<F>(F(1), F(1), F(2), F(-1));
    CHECK(static_cast<double>(abs(v - log(F(2)))) < 1e-40);
  }

  TEST_CASE("hyp2f1 errors") {
    CHECK_THROWS_AS(qie::hyp2f1(0.5, 0.5, -2.0, 0.3), DomainError);
    CHECK_THROWS_AS(qie::hyp2f1(0.5, 0.5, 1.0, 1.5), DomainError);
    // Terminates before hitting the pole in c.
    CHECK(qie::hyp2f1(-1.0, 1.0, -3.0, 0.5) == doctest::Approx(1.0 + 0.5 / 3.0));
    qie::Hyp2f1Options tight;
    tight.max_terms = 5;
    try {
      (void)qie::hyp2f1(0.5, 0.5, 1.0, 0.99, tight);
      FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
      CHECK(e.terms_used() == 5);
      CHECK(std::isfinite(e.partial_sum()));
    }
  }
}
