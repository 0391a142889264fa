#pragma once

#include <cstddef>

#include "qie/cli/config.hpp"
#include "qie/cli/table.hpp"

namespace qie::cli {

struct SweepResult {
  Table table;
  /// Rows whose status is not "ok".
  std::size_t failed_rows = 0;
};

/// One row per (n, beta, mode) in n-major, beta-ascending, mode order. A grid
/// point that fails numerically yields rows with empty values and a status
/// message instead of aborting the sweep. Points run on `threads` workers.
SweepResult run_sweep(const SweepConfig& config, unsigned threads);

/// Column name of the R_m output for 2m = twice_m, e.g. "ratio_R_1", "ratio_R_1.5".
std::string ratio_column(int twice_m);

/// |a - b| / max(|a|, |b|); 0 when both are 0.
double relative_discrepancy(double a, double b);

}  // namespace qie::cli
