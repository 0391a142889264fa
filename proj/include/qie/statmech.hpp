#pragma once

// Exact steady-state occupation laws and direct-summation work moments.
//
// Magnetizations are indexed by twice_m = 2m in {-n, -n+2, ..., n} so odd n
// (half-integer m) keeps exact integer keys.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace qie {

enum class CouplingMode { collective, independent };

std::string_view to_string(CouplingMode mode);
/// Accepts "collective"/"col" and "independent"/"ind".
CouplingMode parse_coupling_mode(std::string_view text);

enum class ComputationPath { direct_sum, closed_form, monte_carlo, large_n_integral };

std::string_view to_string(ComputationPath path);

/// Qubit count, level splitting and inverse temperature (hbar = k_B = 1).
/// beta == 0 is the exact high-temperature limit; beta == +inf is allowed.
struct EngineSpec {
  int n = 1;
  double omega = 1.0;
  double beta = 0.0;

  void validate() const;
  bool hot_limit() const { return beta == 0.0; }
};

class MagnetizationDistribution {
 public:
  MagnetizationDistribution(EngineSpec spec, CouplingMode mode, std::vector<double> log_probs,
                            double log_partition);

  const EngineSpec& spec() const { return spec_; }
  CouplingMode mode() const { return mode_; }
  double log_partition() const { return log_partition_; }

  /// Entry i belongs to twice_m = -n + 2 i.
  std::span<const double> log_probs() const { return log_probs_; }
  std::size_t size() const { return log_probs_.size(); }
  int twice_m_at(std::size_t i) const { return -spec_.n + 2 * static_cast<int>(i); }
  std::size_t index_of(int twice_m) const;

  double log_prob(int twice_m) const { return log_probs_[index_of(twice_m)]; }
  double prob(int twice_m) const;
  std::vector<double> probs() const;

 private:
  EngineSpec spec_;
  CouplingMode mode_;
  std::vector<double> log_probs_;
  double log_partition_;
};

/// Collective: p_m = exp(-beta m omega) / Z_{n/2}.
/// Independent: p_m = C(n, n/2 - m) exp(-beta m omega) / Z_ind.
MagnetizationDistribution magnetization_distribution(const EngineSpec& spec, CouplingMode mode);

/// Mean, second moment, variance and noise-to-signal ratio of the work
/// w_m = 2 m omega collected from m >= 0 outcomes.
struct WorkStatistics {
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
  /// NaN when the mean work vanishes.
  double nsr = 0.0;
  /// ln mean; -inf for zero mean. Survives underflow of `mean`.
  double log_mean = 0.0;
  ComputationPath path = ComputationPath::direct_sum;

  bool nsr_defined() const;

  static WorkStatistics from_mean_variance(double mean, double variance, ComputationPath path);
};

WorkStatistics work_statistics_direct(const EngineSpec& spec, CouplingMode mode);
WorkStatistics work_statistics(const MagnetizationDistribution& dist);

/// R_m = p_m^col / p_m^ind.
double probability_ratio(const EngineSpec& spec, int twice_m);

/// lambda_w = <W_col> / <W_ind>; empty when both vanish (beta = inf).
std::optional<double> collective_advantage_ratio(const EngineSpec& spec);

/// Largest r = n/2 - m with m >= 0: n/2 for even n, (n-1)/2 for odd n.
inline int r_max(int n) { return n % 2 == 0 ? n / 2 : (n - 1) / 2; }

}  // namespace qie
