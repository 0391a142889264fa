#pragma once

#include <cstdint>
#include <string>

#include "qie/engine.hpp"

namespace qie::cli {

struct SimulateOptions {
  EngineSpec spec;
  CouplingMode mode = CouplingMode::collective;
  std::uint64_t cycles = 100'000;
  std::uint64_t seed = 42;
  unsigned threads = 1;
  bool dynamical = false;
  double gamma = 1.0;
  double thermalization_time = 50.0;
  /// Per-cycle CSV; empty to skip.
  std::string records_path;
};

struct SimulateOutcome {
  SimulationReport report;
  double analytic_mean = 0.0;
  double analytic_variance = 0.0;
  /// (empirical - analytic) / standard_error; NaN for zero standard error.
  double z_mean = 0.0;
};

SimulateOutcome run_simulation(const SimulateOptions& opts);

/// One key=value per line in a fixed order.
std::string format_key_value(const SimulateOutcome& outcome, const SimulateOptions& opts);
std::string format_json(const SimulateOutcome& outcome, const SimulateOptions& opts);

}  // namespace qie::cli
