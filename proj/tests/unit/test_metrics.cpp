#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "qie/errors.hpp"
#include "qie/closedform.hpp"
#include "qie/metrics.hpp"
#include "qie/statmech.hpp"

using qie::CouplingMode;
using qie::WorkStatistics;

namespace {
constexpr auto kCol = CouplingMode::collective;
constexpr auto kInd = CouplingMode::independent;
constexpr double kLn2 = std::numbers::ln2;
}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("entropy production") {
    const auto s = qie::work_statistics_direct({5, 1.0, 0.0}, kCol);
    CHECK(qie::entropy_production(s, 0.0) == doctest::Approx(kLn2));
    const auto s25 = qie::work_statistics_direct({25, 1.0, 0.05}, kCol);
    const double sigma = qie::entropy_production(s25, 0.05);
    CHECK(sigma > 0);
    CHECK(sigma == doctest::Approx(kLn2 - 0.05 * s25.mean).epsilon(1e-14));
    const auto cold = qie::work_statistics_direct({25, 1.0, 200.0}, kCol);
    CHECK(qie::entropy_production(cold, 200.0) == doctest::Approx(kLn2).epsilon(1e-12));
    CHECK(qie::entropy_production(s, 0.0, 2.0) == doctest::Approx(2.0));
  }

  TEST_CASE("entropy production guards") {
    const auto s = qie::work_statistics_direct({5, 1.0, 0.0}, kCol);
    CHECK_THROWS_AS(qie::entropy_production(s, 0.0, 0.5), qie::DomainError);
    // A mean work no bath could supply breaks the second law.
    const auto fake = WorkStatistics::from_mean_variance(10.0, 1.0, qie::ComputationPath::direct_sum);
    CHECK_THROWS_AS(qie::entropy_production(fake, 1.0), qie::ConsistencyError);
  }

  TEST_CASE("thermodynamic uncertainty") {
    const auto one = qie::work_statistics_direct({1, 1.0, 0.0}, kCol);
    CHECK(*qie::thermodynamic_uncertainty(one, 0.0) == doctest::Approx(kLn2));
    CHECK(kLn2 * qie::nsr_hot_asymptote(kCol) == doctest::Approx(1.1552).epsilon(1e-4));
    CHECK(kLn2 * qie::nsr_hot_asymptote(kInd) == doctest::Approx(1.4845).epsilon(1e-4));
    const auto big_col = qie::work_statistics_direct({20000, 1.0, 0.0}, kCol);
    const auto big_ind = qie::work_statistics_direct({20000, 1.0, 0.0}, kInd);
    const double q_col = *qie::thermodynamic_uncertainty(big_col, 0.0);
    const double q_ind = *qie::thermodynamic_uncertainty(big_ind, 0.0);
    CHECK(q_col == doctest::Approx(kLn2 * 5 / 3).epsilon(1e-3));
    CHECK(q_ind == doctest::Approx(kLn2 * (std::numbers::pi - 1)).epsilon(5e-3));
    CHECK(q_col < q_ind);
    CHECK(q_ind < qie::kTurBound);
    const auto cold = qie::work_statistics_direct({3, 1.0, std::numeric_limits<double>::infinity()}, kCol);
    CHECK_FALSE(qie::thermodynamic_uncertainty(cold, std::numeric_limits<double>::infinity()).has_value());
  }

  TEST_CASE("thermo_metrics bundle") {
    const auto s = qie::work_statistics_direct({8, 1.0, 0.2}, kInd);
    const auto m = qie::thermo_metrics(s, 0.2, kInd);
    CHECK(m.mean_work == s.mean);
    CHECK(m.nsr == s.nsr);
    CHECK(m.tur_q == doctest::Approx(s.nsr * m.entropy_production));
    CHECK(m.mode == kInd);
  }

  TEST_CASE("mode comparison") {
    const auto c = qie::mode_comparison({25, 1.0, 0.01});
    REQUIRE(c.q_col.has_value());
    REQUIRE(c.q_ind.has_value());
    CHECK(*c.q_col < *c.q_ind);
    CHECK(*c.q_ind < 2.0);
    CHECK(c.tur_violated_col);
    CHECK(c.tur_violated_ind);

    const auto one = qie::mode_comparison({1, 1.0, 0.7});
    CHECK(*one.lambda_w == doctest::Approx(1.0));
    CHECK(one.nsr_col == doctest::Approx(one.nsr_ind));
    CHECK(one.sigma_col == doctest::Approx(one.sigma_ind));
    CHECK(*one.q_col == doctest::Approx(*one.q_ind));

    CHECK(*qie::mode_comparison({10, 1.0, 2.0}).lambda_w < 1.0);
  }

  TEST_CASE("second law over a grid") {
    for (int n = 1; n <= 50; ++n) {
      for (int k = 0; k <= 50; ++k) {
        const double beta = k == 0 ? 0.0 : 1e-4 * std::pow(5e4, (k - 1) / 49.0);
        const auto c = qie::mode_comparison({n, 1.0, beta});
        CHECK(c.sigma_col >= -1e-12);
        CHECK(c.sigma_ind >= -1e-12);
      }
    }
  }
}
