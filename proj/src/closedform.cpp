#include "qie/closedform.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qie/closedform_impl.hpp"
#include "qie/errors.hpp"
#include "qie/precision.hpp"
#include "qie/specfun.hpp"

namespace qie {
namespace {

void require_n(int n) {
  if (n < 1) throw DomainError("closed form: n must be >= 1");
}

void require_finite_temperature(int n, double beta, double omega) {
  require_n(n);
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("closed form: finite-temperature forms need 0 < beta < inf");
  }
  if (!(omega > 0.0)) throw DomainError("closed form: omega must be > 0");
}

double large_n_digits_hint(int n, double x) {
  const double a = n * x;
  return 30.0 + (a < 1.0 ? -3.0 * std::log10(a) : a / std::log(10.0));
}

}  // namespace

std::string_view appendix_formula_id(CouplingMode mode, int n, Moment moment) {
  const bool even = n % 2 == 0;
  if (moment == Moment::mean) {
    if (mode == CouplingMode::independent) return even ? "A1" : "A2";
    return even ? "A3" : "A4";
  }
  if (mode == CouplingMode::independent) return even ? "A5" : "A7";
  return even ? "A6" : "A8";
}

double mean_work_hot_collective(int n, double omega) {
  require_n(n);
  const double nn = n;
  return n % 2 == 1 ? (nn + 1.0) * omega / 4.0 : nn * (nn + 2.0) * omega / (4.0 * (nn + 1.0));
}

double mean_work_hot_independent(int n, double omega) {
  require_n(n);
  const double nn = n;
  if (n % 2 == 1) {
    return std::exp(log_binomial(n, (n + 1) / 2) - (nn + 1.0) * std::numbers::ln2) * (nn + 1.0) *
           omega;
  }
  return std::exp(log_binomial(n, n / 2) - (nn + 1.0) * std::numbers::ln2) * nn * omega;
}

double mean_work_hot(int n, CouplingMode mode, double omega) {
  return mode == CouplingMode::collective ? mean_work_hot_collective(n, omega)
                                          : mean_work_hot_independent(n, omega);
}

double variance_hot(int n, CouplingMode mode, double omega) {
  require_n(n);
  double first = 0.0, second = 0.0;
  for (int r = 0; r <= r_max(n); ++r) {
    const double w = n - 2 * r;
    const double weight = mode == CouplingMode::collective
                              ? 1.0 / (n + 1.0)
                              : std::exp(log_binomial(n, r) - n * std::numbers::ln2);
    first += weight * w;
    second += weight * w * w;
  }
  return omega * omega * (second - first * first);
}

double nsr_hot_asymptote(CouplingMode mode) {
  return mode == CouplingMode::collective ? 5.0 / 3.0 : std::numbers::pi - 1.0;
}

double finite_T_digits_hint(int n, double x) {
  const double nn = n;
  int sign = 0;
  double d = 25.0 + (1.6 * x * (nn + 2.0) + nn * std::numbers::ln2 + ::lgamma_r(nn + 1.0, &sign)) /
                        std::log(10.0);
  if (x < 1.0) d += 5.0 * -std::log10(x);
  return d;
}

double mean_work_finite_T(int n, double beta, double omega, CouplingMode mode) {
  require_finite_temperature(n, beta, omega);
  const double x = beta * omega;
  auto kernel = [&]<class S>() {
    return static_cast<double>(closedform_impl::mean_finite_T<S>(n, S(x), mode));
  };
  return omega * precision::evaluate_escalating(finite_T_digits_hint(n, x), kernel);
}

double variance_finite_T(int n, double beta, double omega, CouplingMode mode) {
  require_finite_temperature(n, beta, omega);
  const double x = beta * omega;
  auto kernel = [&]<class S>() {
    return static_cast<double>(closedform_impl::variance_finite_T<S>(n, S(x), mode));
  };
  return omega * omega * precision::evaluate_escalating(finite_T_digits_hint(n, x), kernel);
}

double mean_work_large_n(int n, double beta, double omega) {
  require_finite_temperature(n, beta, omega);
  const double x = beta * omega;
  auto kernel = [&]<class S>() {
    return static_cast<double>(closedform_impl::mean_large_n<S>(n, S(x)));
  };
  return omega * precision::evaluate_escalating(large_n_digits_hint(n, x), kernel);
}

double second_moment_large_n(int n, double beta, double omega) {
  require_finite_temperature(n, beta, omega);
  const double x = beta * omega;
  auto kernel = [&]<class S>() {
    return static_cast<double>(closedform_impl::second_moment_large_n<S>(n, S(x)));
  };
  return omega * omega * precision::evaluate_escalating(large_n_digits_hint(n, x), kernel);
}

WorkStatistics work_statistics_closed_form(const EngineSpec& spec, CouplingMode mode) {
  spec.validate();
  if (std::isinf(spec.beta)) throw DomainError("closed form: beta = inf has no closed form");
  double mean = 0.0, var = 0.0;
  if (spec.hot_limit()) {
    mean = mean_work_hot(spec.n, mode, spec.omega);
    var = variance_hot(spec.n, mode, spec.omega);
  } else {
    mean = mean_work_finite_T(spec.n, spec.beta, spec.omega, mode);
    var = variance_finite_T(spec.n, spec.beta, spec.omega, mode);
  }
  return WorkStatistics::from_mean_variance(mean, var, ComputationPath::closed_form);
}

WorkStatistics work_statistics_large_n(const EngineSpec& spec) {
  spec.validate();
  const double mean = mean_work_large_n(spec.n, spec.beta, spec.omega);
  const double second = second_moment_large_n(spec.n, spec.beta, spec.omega);
  auto s = WorkStatistics::from_mean_variance(mean, second - mean * mean,
                                              ComputationPath::large_n_integral);
  s.second_moment = second;
  return s;
}

}  // namespace qie
