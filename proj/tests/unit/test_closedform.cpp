#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <string_view>

#include "../oracles.hpp"
#include "qie/errors.hpp"
#include "qie/closedform.hpp"
#include "qie/statmech.hpp"

using qie::CouplingMode;

namespace {
constexpr auto kCol = CouplingMode::collective;
constexpr auto kInd = CouplingMode::independent;
constexpr double kBetas[] = {0.01, 0.1, 0.5, 1.0, 2.0, 5.0};
}  // namespace

TEST_SUITE("closedform") {
  TEST_CASE("hot collective mean") {
    CHECK(qie::mean_work_hot_collective(3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(qie::mean_work_hot_collective(2) == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(std::abs(qie::mean_work_hot_collective(1000) / 250.0 - 1) < 1e-3);
    CHECK(qie::mean_work_hot_collective(3, 2.0) == doctest::Approx(2.0));
  }

  TEST_CASE("hot independent mean") {
    CHECK(qie::mean_work_hot_independent(1) == doctest::Approx(0.5));
    CHECK(qie::mean_work_hot_independent(2) == doctest::Approx(0.5));
    const int n = 10000;
    CHECK(std::abs(qie::mean_work_hot_independent(n) / std::sqrt(n / (2 * std::numbers::pi)) - 1) <
          0.005);
  }

  TEST_CASE("hot variance") {
    for (auto mode : {kCol, kInd}) CHECK(qie::variance_hot(1, mode) == doctest::Approx(0.25));
    const auto c6 = oracle::naive_collective(6, 0.0);
    CHECK(oracle::rel_err(qie::variance_hot(6, kCol), double(c6.variance())) < 1e-13);
    const auto i6 = oracle::enumerate_independent(6, 0.0);
    CHECK(oracle::rel_err(qie::variance_hot(6, kInd), double(i6.variance())) < 1e-13);
  }

  TEST_CASE("hot forms equal direct sums for n = 1..50") {
    for (int n = 1; n <= 50; ++n) {
      CAPTURE(n);
      for (auto mode : {kCol, kInd}) {
        const auto d = qie::work_statistics_direct({n, 1.0, 0.0}, mode);
        CHECK(oracle::rel_err(qie::mean_work_hot(n, mode), d.mean) < 1e-13);
        CHECK(oracle::rel_err(qie::variance_hot(n, mode), d.variance) < 1e-12);
      }
    }
  }

  TEST_CASE("nsr asymptotes") {
    CHECK(qie::nsr_hot_asymptote(kCol) == doctest::Approx(5.0 / 3));
    CHECK(qie::nsr_hot_asymptote(kInd) == doctest::Approx(std::numbers::pi - 1));
    CHECK(qie::nsr_hot_asymptote(kCol) < qie::nsr_hot_asymptote(kInd));
  }

  TEST_CASE("A3 for n = 2 at beta omega = 1") {
    const double e = std::exp(1.0);
    const double want = (2 * e * e - 4 * e + 2) / ((e - 1) * (e * e * e - 1));
    CHECK(oracle::rel_err(qie::mean_work_finite_T(2, 1.0, 1.0, kCol), want) < 1e-13);
    CHECK(qie::appendix_formula_id(kCol, 2, qie::Moment::mean) == "A3");
  }

  TEST_CASE("appendix ids are distinct per mode, parity and moment") {
    std::set<std::string_view> ids;
    for (auto mode : {kCol, kInd})
      for (int n : {1, 2})
        for (auto m : {qie::Moment::mean, qie::Moment::variance}) ids.insert(qie::appendix_formula_id(mode, n, m));
    CHECK(ids.size() == 8);
    CHECK(ids.count("A1") == 1);
    CHECK(ids.count("A8") == 1);
  }

  TEST_CASE("finite-temperature forms against oracles") {
    for (int n = 1; n <= 20; ++n) {
      for (double beta : kBetas) {
        CAPTURE(n);
        CAPTURE(beta);
        const auto c = oracle::naive_collective(n, beta);
        CHECK(oracle::rel_err(qie::mean_work_finite_T(n, beta, 1.0, kCol), double(c.mean)) < 1e-9);
        CHECK(oracle::rel_err(qie::variance_finite_T(n, beta, 1.0, kCol), double(c.variance())) < 1e-9);
        const auto i = oracle::pascal_independent(n, beta);
        CHECK(oracle::rel_err(qie::mean_work_finite_T(n, beta, 1.0, kInd), double(i.mean)) < 1e-9);
        CHECK(oracle::rel_err(qie::variance_finite_T(n, beta, 1.0, kInd), double(i.variance())) < 1e-9);
      }
    }
    const auto e5 = oracle::enumerate_independent(5, 0.5);
    CHECK(oracle::rel_err(qie::variance_finite_T(5, 0.5, 1.0, kInd), double(e5.variance())) < 1e-9);
    const auto e1 = oracle::enumerate_independent(1, 1.0);
    CHECK(oracle::rel_err(qie::mean_work_finite_T(1, 1.0, 1.0, kInd), double(e1.mean)) < 1e-12);
  }

  TEST_CASE("finite-temperature forms approach the hot limit") {
    CHECK(qie::mean_work_finite_T(2, 1e-7, 1.0, kCol) == doctest::Approx(2.0 / 3).epsilon(1e-6));
    CHECK(qie::variance_finite_T(4, 1e-7, 1.0, kCol) ==
          doctest::Approx(qie::variance_hot(4, kCol)).epsilon(1e-6));
  }

  TEST_CASE("finite-temperature domain") {
    CHECK_THROWS_AS(qie::mean_work_finite_T(3, 0.0, 1.0, kCol), qie::DomainError);
    CHECK_THROWS_AS(qie::variance_finite_T(0, 1.0, 1.0, kInd), qie::DomainError);
  }

  TEST_CASE("closed-form statistics dispatch") {
    const auto hot = qie::work_statistics_closed_form({7, 1.0, 0.0}, kInd);
    CHECK(hot.path == qie::ComputationPath::closed_form);
    CHECK(hot.mean == doctest::Approx(qie::mean_work_hot_independent(7)));
    const auto warm = qie::work_statistics_closed_form({7, 1.0, 0.3}, kCol);
    CHECK(warm.mean == doctest::Approx(qie::work_statistics_direct({7, 1.0, 0.3}, kCol).mean).epsilon(1e-12));
  }

  TEST_CASE("large-n mean") {
    const int n = 200;
    // The beta -> 0 limit of the continuum form is n omega / 4.
    CHECK(std::abs(qie::mean_work_large_n(n, 1e-6, 1.0) / 50.0 - 1) < 0.02);
    const auto d = qie::work_statistics_direct({n, 1.0, 0.01}, kCol);
    CHECK(oracle::rel_err(qie::mean_work_large_n(n, 0.01, 1.0), d.mean) < 0.02);
    // Not accurate at small n, but finite and positive.
    const double small = qie::mean_work_large_n(10, 1.0, 1.0);
    CHECK(std::isfinite(small));
    CHECK(small > 0);
  }

  TEST_CASE("large-n mean at n = 200, beta omega = 0.001") {
    // Checked against the direct sum; see the large_n acceptance criterion.
    const auto d = qie::work_statistics_direct({200, 1.0, 0.001}, kCol);
    CHECK(oracle::rel_err(qie::mean_work_large_n(200, 0.001, 1.0), d.mean) < 0.02);
  }

  TEST_CASE("large-n second moment") {
    const int n = 200;
    const auto d = qie::work_statistics_direct({n, 1.0, 0.001}, kCol);
    CHECK(oracle::rel_err(qie::second_moment_large_n(n, 0.001, 1.0), d.second_moment) < 0.02);
    CHECK(std::abs(qie::second_moment_large_n(n, 1e-9, 1.0) / (n * n / 6.0) - 1) < 0.01);
    // Removable singularity: continuous across the Taylor switch.
    // Removable singularity: the step across the Taylor switch matches the
    // neighbouring steps on either side.
    for (auto f : {qie::second_moment_large_n, qie::mean_work_large_n}) {
      const double h = 1e-10;
      auto at = [&](double a) { return f(n, a / n, 1.0); };
      const double left = at(1e-6 - 1.5 * h) - at(1e-6 - 2.5 * h);
      const double across = at(1e-6 + 0.5 * h) - at(1e-6 - 0.5 * h);
      const double right = at(1e-6 + 2.5 * h) - at(1e-6 + 1.5 * h);
      CHECK(std::abs(across - left) < 1e-3 * std::abs(left) + 1e-12 * std::abs(at(1e-6)));
      CHECK(std::abs(across - right) < 1e-3 * std::abs(right) + 1e-12 * std::abs(at(1e-6)));
    }
  }

  TEST_CASE("large-n error shrinks with n at fixed beta n omega") {
    const double a = 0.1;
    double previous = 1.0;
    for (int n : {50, 100, 200, 400, 800}) {
      const double beta = a / n;
      const auto d = qie::work_statistics_direct({n, 1.0, beta}, kCol);
      const double err = oracle::rel_err(qie::mean_work_large_n(n, beta, 1.0), d.mean);
      CAPTURE(n);
      CHECK(err < previous);
      previous = err;
    }
  }
}
