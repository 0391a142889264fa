#pragma once

// Averaged entropy production and thermodynamic uncertainty built on
// WorkStatistics (k_B = 1).

#include <numbers>
#include <optional>

#include "qie/statmech.hpp"

namespace qie {

/// Minimal entropy produced by erasing the one-bit measurement record: ln 2.
inline constexpr double kMinimalErasureEntropy = std::numbers::ln2;

/// Classical (and incoherent quantum) engines satisfy Q >= 2.
inline constexpr double kTurBound = 2.0;

struct ThermoMetrics {
  double mean_work = 0.0;
  double nsr = 0.0;
  double entropy_production = 0.0;
  double tur_q = 0.0;
  double erasure_entropy = kMinimalErasureEntropy;
  CouplingMode mode = CouplingMode::collective;
};

/// Sigma = -beta <W> + dS_era. Throws ConsistencyError if Sigma < -1e-12 and
/// DomainError for erasure_entropy < ln 2.
double entropy_production(const WorkStatistics& stats, double beta,
                          double erasure_entropy = kMinimalErasureEntropy);

/// Q = nsr * Sigma; empty when the mean work vanishes.
std::optional<double> thermodynamic_uncertainty(const WorkStatistics& stats, double beta,
                                                double erasure_entropy = kMinimalErasureEntropy);

ThermoMetrics thermo_metrics(const WorkStatistics& stats, double beta, CouplingMode mode,
                             double erasure_entropy = kMinimalErasureEntropy);

struct ModeComparison {
  std::optional<double> lambda_w;
  double nsr_col = 0.0, nsr_ind = 0.0;
  double sigma_col = 0.0, sigma_ind = 0.0;
  std::optional<double> q_col, q_ind;
  bool tur_violated_col = false, tur_violated_ind = false;
};

/// Direct-sum comparison of both coupling modes at one grid point.
ModeComparison mode_comparison(const EngineSpec& spec,
                               double erasure_entropy = kMinimalErasureEntropy);

/// Same bundle from precomputed statistics.
ModeComparison mode_comparison(const WorkStatistics& col, const WorkStatistics& ind, double beta,
                               double erasure_entropy = kMinimalErasureEntropy);

}  // namespace qie
