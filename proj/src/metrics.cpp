#include "qie/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qie/errors.hpp"

namespace qie {

double entropy_production(const WorkStatistics& stats, double beta, double erasure_entropy) {
  if (!(beta >= 0.0)) throw DomainError("entropy_production: beta must be >= 0");
  if (!(erasure_entropy >= kMinimalErasureEntropy)) {
    throw DomainError("entropy_production: erasure entropy below ln 2");
  }
  // beta = inf pairs with zero mean work.
  const double heat_term = stats.mean > 0.0 ? beta * stats.mean : 0.0;
  const double sigma = erasure_entropy - heat_term;
  if (sigma < -1e-12) {
    throw ConsistencyError("negative entropy production " + std::to_string(sigma));
  }
  return sigma;
}

std::optional<double> thermodynamic_uncertainty(const WorkStatistics& stats, double beta,
                                                double erasure_entropy) {
  const double sigma = entropy_production(stats, beta, erasure_entropy);
  if (!stats.nsr_defined()) return std::nullopt;
  return stats.nsr * sigma;
}

ThermoMetrics thermo_metrics(const WorkStatistics& stats, double beta, CouplingMode mode,
                             double erasure_entropy) {
  ThermoMetrics m;
  m.mode = mode;
  m.mean_work = stats.mean;
  m.nsr = stats.nsr;
  m.erasure_entropy = erasure_entropy;
  m.entropy_production = entropy_production(stats, beta, erasure_entropy);
  m.tur_q = thermodynamic_uncertainty(stats, beta, erasure_entropy)
                .value_or(std::numeric_limits<double>::quiet_NaN());
  return m;
}

ModeComparison mode_comparison(const WorkStatistics& col, const WorkStatistics& ind, double beta,
                               double erasure_entropy) {
  ModeComparison c;
  if (std::isfinite(ind.log_mean)) c.lambda_w = std::exp(col.log_mean - ind.log_mean);
  c.nsr_col = col.nsr;
  c.nsr_ind = ind.nsr;
  c.sigma_col = entropy_production(col, beta, erasure_entropy);
  c.sigma_ind = entropy_production(ind, beta, erasure_entropy);
  c.q_col = thermodynamic_uncertainty(col, beta, erasure_entropy);
  c.q_ind = thermodynamic_uncertainty(ind, beta, erasure_entropy);
  c.tur_violated_col = c.q_col && *c.q_col < kTurBound;
  c.tur_violated_ind = c.q_ind && *c.q_ind < kTurBound;
  return c;
}

ModeComparison mode_comparison(const EngineSpec& spec, double erasure_entropy) {
  return mode_comparison(work_statistics_direct(spec, CouplingMode::collective),
                         work_statistics_direct(spec, CouplingMode::independent), spec.beta,
                         erasure_entropy);
}

}  // namespace qie
