#include "qie/statmech.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qie/errors.hpp"
#include "qie/specfun.hpp"

namespace qie {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

std::string_view to_string(CouplingMode mode) {
  return mode == CouplingMode::collective ? "collective" : "independent";
}

CouplingMode parse_coupling_mode(std::string_view text) {
  if (text == "collective" || text == "col") return CouplingMode::collective;
  if (text == "independent" || text == "ind") return CouplingMode::independent;
  throw DomainError("unknown coupling mode '" + std::string(text) + "'");
}

std::string_view to_string(ComputationPath path) {
  switch (path) {
    case ComputationPath::direct_sum: return "direct_sum";
    case ComputationPath::closed_form: return "closed_form";
    case ComputationPath::monte_carlo: return "monte_carlo";
    case ComputationPath::large_n_integral: return "large_n_integral";
  }
  return "unknown";
}

void EngineSpec::validate() const {
  if (n < 1) throw DomainError("EngineSpec: n must be >= 1");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("EngineSpec: omega must be > 0");
  if (!(beta >= 0.0)) throw DomainError("EngineSpec: beta must be >= 0");
}

MagnetizationDistribution::MagnetizationDistribution(EngineSpec spec, CouplingMode mode,
                                                     std::vector<double> log_probs,
                                                     double log_partition)
    : spec_(spec), mode_(mode), log_probs_(std::move(log_probs)), log_partition_(log_partition) {}

std::size_t MagnetizationDistribution::index_of(int twice_m) const {
  const int shifted = twice_m + spec_.n;
  if (twice_m < -spec_.n || twice_m > spec_.n || shifted % 2 != 0) {
    throw DomainError("magnetization 2m = " + std::to_string(twice_m) +
                      " is not a level of n = " + std::to_string(spec_.n));
  }
  return static_cast<std::size_t>(shifted / 2);
}

double MagnetizationDistribution::prob(int twice_m) const { return std::exp(log_prob(twice_m)); }

std::vector<double> MagnetizationDistribution::probs() const {
  std::vector<double> p(log_probs_.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::exp(log_probs_[i]);
  return p;
}

MagnetizationDistribution magnetization_distribution(const EngineSpec& spec, CouplingMode mode) {
  spec.validate();
  const int n = spec.n;
  std::vector<double> log_w(static_cast<std::size_t>(n) + 1);

  if (std::isinf(spec.beta)) {
    // Ground state m = -n/2 only.
    std::fill(log_w.begin(), log_w.end(), kNegInf);
    log_w[0] = 0.0;
    return MagnetizationDistribution(spec, mode, log_w, 0.0);
  }

  for (std::size_t i = 0; i < log_w.size(); ++i) {
    const int twice_m = -n + 2 * static_cast<int>(i);
    const double boltzmann = spec.hot_limit() ? 0.0 : -spec.beta * spec.omega * 0.5 * twice_m;
    const double degeneracy =
        mode == CouplingMode::independent ? log_binomial(n, (n - twice_m) / 2) : 0.0;
    log_w[i] = degeneracy + boltzmann;
  }

  double log_z = 0.0;
  if (spec.hot_limit()) {
    log_z = mode == CouplingMode::collective ? std::log(static_cast<double>(n) + 1.0)
                                             : n * std::numbers::ln2;
  } else {
    log_z = log_sum_exp(log_w);
  }
  for (auto& v : log_w) v -= log_z;
  return MagnetizationDistribution(spec, mode, std::move(log_w), log_z);
}

bool WorkStatistics::nsr_defined() const { return std::isfinite(nsr); }

WorkStatistics WorkStatistics::from_mean_variance(double mean, double variance,
                                                  ComputationPath path) {
  WorkStatistics s;
  s.mean = mean;
  s.variance = variance;
  s.second_moment = variance + mean * mean;
  s.log_mean = mean > 0.0 ? std::log(mean) : kNegInf;
  s.nsr = mean > 0.0 ? (variance / mean) / mean : std::numeric_limits<double>::quiet_NaN();
  s.path = path;
  return s;
}

WorkStatistics work_statistics(const MagnetizationDistribution& dist) {
  const double omega = dist.spec().omega;
  const auto lp = dist.log_probs();

  std::vector<double> log_first, log_second;
  for (std::size_t i = 0; i < lp.size(); ++i) {
    const int twice_m = dist.twice_m_at(i);
    if (twice_m <= 0) continue;
    const double log_w = std::log(twice_m * omega);
    log_first.push_back(log_w + lp[i]);
    log_second.push_back(2.0 * log_w + lp[i]);
  }

  WorkStatistics s;
  s.path = ComputationPath::direct_sum;
  if (log_first.empty()) {
    // n = 0 is excluded; this branch is only reachable for an all-negative support.
    s.log_mean = kNegInf;
    s.nsr = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  s.log_mean = log_sum_exp(log_first);
  const double log_m2 = log_sum_exp(log_second);
  s.mean = std::exp(s.log_mean);
  s.second_moment = std::exp(log_m2);

  // Centred sum; outcomes with m <= 0 carry zero work.
  double var = 0.0;
  for (std::size_t i = 0; i < lp.size(); ++i) {
    const int twice_m = dist.twice_m_at(i);
    const double w = twice_m > 0 ? twice_m * omega : 0.0;
    const double d = w - s.mean;
    var += std::exp(lp[i]) * d * d;
  }
  s.variance = var;

  if (s.log_mean == kNegInf) {
    s.nsr = std::numeric_limits<double>::quiet_NaN();
  } else if (s.mean > 1e-150) {
    s.nsr = s.variance / (s.mean * s.mean);
  } else {
    s.nsr = std::expm1(log_m2 - 2.0 * s.log_mean);
  }
  return s;
}

WorkStatistics work_statistics_direct(const EngineSpec& spec, CouplingMode mode) {
  return work_statistics(magnetization_distribution(spec, mode));
}

double probability_ratio(const EngineSpec& spec, int twice_m) {
  const auto col = magnetization_distribution(spec, CouplingMode::collective);
  const auto ind = magnetization_distribution(spec, CouplingMode::independent);
  return std::exp(col.log_prob(twice_m) - ind.log_prob(twice_m));
}

std::optional<double> collective_advantage_ratio(const EngineSpec& spec) {
  const auto col = work_statistics_direct(spec, CouplingMode::collective);
  const auto ind = work_statistics_direct(spec, CouplingMode::independent);
  if (ind.log_mean == kNegInf) return std::nullopt;
  return std::exp(col.log_mean - ind.log_mean);
}

}  // namespace qie
