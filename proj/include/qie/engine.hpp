#pragma once

// Monte Carlo simulation of the three-stroke cycle: thermalize, read the sign
// of m, flip m -> -m when it is positive and collect w_m = 2 m omega.

#include <cstdint>
#include <string>
#include <vector>

#include "qie/dynamics.hpp"
#include "qie/statmech.hpp"

namespace qie {

struct CycleRecord {
  /// 2m, so odd n stays integral.
  int twice_m = 0;
  /// m > 0; m = 0 counts as non-positive and is not flipped.
  bool measured_positive = false;
  double work_extracted = 0.0;
  std::uint64_t cycle_index = 0;
  /// Dynamical runs only: the thermalization stroke that produced this cycle's
  /// state ended within the convergence tolerance of the Gibbs state.
  bool thermalized = true;

  double m() const { return twice_m / 2.0; }
};

struct SimulationReport {
  std::uint64_t n_cycles = 0;
  double empirical_mean = 0.0;
  /// Unbiased (N - 1) estimator; 0 for a single cycle.
  double empirical_variance = 0.0;
  double standard_error = 0.0;
  std::uint64_t seed = 0;
  EngineSpec spec;
  CouplingMode mode = CouplingMode::collective;
  std::string rng_algorithm;
  std::uint64_t positive_cycles = 0;
  /// Counts per outcome, entry i <-> twice_m = -n + 2 i.
  std::vector<std::uint64_t> histogram;

  bool dynamical = false;
  double thermalization_time = 0.0;
  std::uint64_t unconverged_cycles = 0;
};

struct RunOptions {
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Cycles per RNG stream. Results depend on this, not on `threads`.
  std::uint64_t block_size = 65536;
};

/// Independent cycles drawn from the steady-state magnetization law.
/// Block k of `block_size` cycles uses the generator seeded with `seed` and
/// jumped k times, so the report is bit-identical for any thread count.
SimulationReport run_cycles(const EngineSpec& spec, CouplingMode mode, std::uint64_t n_cycles,
                            std::uint64_t seed, const RunOptions& opts = {});

/// The same cycles as run_cycles (same streams), returned individually.
std::vector<CycleRecord> sample_cycles(const EngineSpec& spec, CouplingMode mode,
                                       std::uint64_t n_cycles, std::uint64_t seed,
                                       std::uint64_t block_size = RunOptions{}.block_size);

/// Reduces records (in order) to a report with the given identifiers.
SimulationReport summarize(const std::vector<CycleRecord>& records, const EngineSpec& spec,
                           CouplingMode mode, std::uint64_t seed);

/// Trace distance to the Gibbs state below which a thermalization stroke
/// counts as converged.
inline constexpr double kThermalizationTolerance = 1e-8;

/// Collective engine with finite thermalization: the first cycle starts from
/// the Gibbs state, and every later cycle starts from the post-flip state
/// |n/2, -m> (or the unflipped |n/2, m>) evolved under the Lindblad equation
/// for `thermalization_time`. Requires n <= 12 and bath parameters matching
/// `spec`. Records are appended to `records` when non-null.
SimulationReport run_cycles_dynamical(const EngineSpec& spec, const BathSpec& bath,
                                      std::uint64_t n_cycles, double thermalization_time,
                                      std::uint64_t seed,
                                      std::vector<CycleRecord>* records = nullptr);

inline constexpr int kMaxDynamicalQubits = 12;

}  // namespace qie
