#include "qie/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "qie/errors.hpp"
#include "qie/rng.hpp"

namespace qie {
namespace {

using Rng = Xoshiro256StarStar;

/// Draws twice_m from the steady state of one coupling mode.
class MagnetizationSampler {
 public:
  MagnetizationSampler(const EngineSpec& spec, CouplingMode mode) : n_(spec.n), mode_(mode) {
    if (mode == CouplingMode::collective) {
      const auto probs = magnetization_distribution(spec, mode).probs();
      cdf_.resize(probs.size());
      double acc = 0.0;
      for (std::size_t i = 0; i < probs.size(); ++i) cdf_[i] = acc += probs[i];
    } else {
      // Excited-state population 1 / (1 + e^{beta omega}).
      p_up_ = std::isinf(spec.beta) ? 0.0 : 1.0 / (1.0 + std::exp(spec.beta * spec.omega));
    }
  }

  /// Index i <-> twice_m = -n + 2 i.
  std::size_t draw(Rng& rng) const {
    if (mode_ == CouplingMode::collective) {
      const double u = rng.uniform() * cdf_.back();
      const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
      return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
    }
    std::size_t excited = 0;
    for (int q = 0; q < n_; ++q) excited += rng.uniform() < p_up_;
    return excited;
  }

 private:
  int n_;
  CouplingMode mode_;
  std::vector<double> cdf_;
  double p_up_ = 0.0;
};

CycleRecord make_record(int twice_m, double omega, std::uint64_t index) {
  CycleRecord r;
  r.twice_m = twice_m;
  r.measured_positive = twice_m > 0;
  r.work_extracted = r.measured_positive ? twice_m * omega : 0.0;
  r.cycle_index = index;
  return r;
}

/// Moments from outcome counts; exact integer merging upstream keeps this
/// independent of how cycles were sharded.
void fill_moments(SimulationReport& report) {
  const int n = report.spec.n;
  const double omega = report.spec.omega;
  auto work_at = [&](std::size_t i) {
    const int twice_m = -n + 2 * static_cast<int>(i);
    return twice_m > 0 ? twice_m * omega : 0.0;
  };
  std::uint64_t total = 0, positive = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < report.histogram.size(); ++i) {
    const std::uint64_t c = report.histogram[i];
    total += c;
    if (-n + 2 * static_cast<int>(i) > 0) positive += c;
    sum += static_cast<double>(c) * work_at(i);
  }
  report.n_cycles = total;
  report.positive_cycles = positive;
  report.empirical_mean = total ? sum / static_cast<double>(total) : 0.0;
  double ss = 0.0;
  for (std::size_t i = 0; i < report.histogram.size(); ++i) {
    const double d = work_at(i) - report.empirical_mean;
    ss += static_cast<double>(report.histogram[i]) * d * d;
  }
  report.empirical_variance = total > 1 ? ss / static_cast<double>(total - 1) : 0.0;
  report.standard_error =
      total ? std::sqrt(report.empirical_variance / static_cast<double>(total)) : 0.0;
}

SimulationReport empty_report(const EngineSpec& spec, CouplingMode mode, std::uint64_t seed) {
  SimulationReport r;
  r.seed = seed;
  r.spec = spec;
  r.mode = mode;
  r.rng_algorithm = std::string(Rng::kName);
  r.histogram.assign(static_cast<std::size_t>(spec.n) + 1, 0);
  return r;
}

void require_cycles(std::uint64_t n_cycles, std::uint64_t block_size) {
  if (n_cycles < 1) throw DomainError("engine: n_cycles must be >= 1");
  if (block_size < 1) throw DomainError("engine: block_size must be >= 1");
}

}  // namespace

SimulationReport run_cycles(const EngineSpec& spec, CouplingMode mode, std::uint64_t n_cycles,
                            std::uint64_t seed, const RunOptions& opts) {
  spec.validate();
  require_cycles(n_cycles, opts.block_size);
  const MagnetizationSampler sampler(spec, mode);
  const std::uint64_t blocks = (n_cycles + opts.block_size - 1) / opts.block_size;
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, blocks));

  SimulationReport report = empty_report(spec, mode, seed);
  std::atomic<std::uint64_t> next_block{0};
  std::mutex merge;
  auto worker = [&] {
    std::vector<std::uint64_t> local(report.histogram.size(), 0);
    for (std::uint64_t b = next_block++; b < blocks; b = next_block++) {
      Rng rng = Rng::stream(seed, b);
      const std::uint64_t count = std::min(opts.block_size, n_cycles - b * opts.block_size);
      for (std::uint64_t c = 0; c < count; ++c) ++local[sampler.draw(rng)];
    }
    std::lock_guard lock(merge);
    for (std::size_t i = 0; i < local.size(); ++i) report.histogram[i] += local[i];
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  fill_moments(report);
  return report;
}

std::vector<CycleRecord> sample_cycles(const EngineSpec& spec, CouplingMode mode,
                                       std::uint64_t n_cycles, std::uint64_t seed,
                                       std::uint64_t block_size) {
  spec.validate();
  require_cycles(n_cycles, block_size);
  const MagnetizationSampler sampler(spec, mode);
  std::vector<CycleRecord> records;
  records.reserve(n_cycles);
  Rng rng(seed);
  for (std::uint64_t i = 0; i < n_cycles; ++i) {
    if (i % block_size == 0) rng = Rng::stream(seed, i / block_size);
    const int twice_m = -spec.n + 2 * static_cast<int>(sampler.draw(rng));
    records.push_back(make_record(twice_m, spec.omega, i));
  }
  return records;
}

SimulationReport summarize(const std::vector<CycleRecord>& records, const EngineSpec& spec,
                           CouplingMode mode, std::uint64_t seed) {
  spec.validate();
  SimulationReport report = empty_report(spec, mode, seed);
  for (const auto& r : records) {
    if (r.twice_m < -spec.n || r.twice_m > spec.n || (r.twice_m + spec.n) % 2 != 0) {
      throw DomainError("summarize: record outside the magnetization lattice");
    }
    ++report.histogram[static_cast<std::size_t>((r.twice_m + spec.n) / 2)];
    if (!r.thermalized) ++report.unconverged_cycles;
  }
  fill_moments(report);
  return report;
}

SimulationReport run_cycles_dynamical(const EngineSpec& spec, const BathSpec& bath,
                                      std::uint64_t n_cycles, double thermalization_time,
                                      std::uint64_t seed, std::vector<CycleRecord>* records) {
  spec.validate();
  bath.validate();
  require_cycles(n_cycles, 1);
  if (spec.n > kMaxDynamicalQubits) {
    throw DomainError("run_cycles_dynamical: n must be <= 12 for dense dynamics");
  }
  if (bath.beta != spec.beta || bath.omega != spec.omega) {
    throw DomainError("run_cycles_dynamical: bath beta/omega must match the engine spec");
  }
  if (!(thermalization_time >= 0.0) || !std::isfinite(thermalization_time)) {
    throw DomainError("run_cycles_dynamical: thermalization time must be finite and >= 0");
  }

  // Diagonal states stay diagonal, so one propagation per basis state gives
  // the full transition law of the thermalization stroke.
  const auto ops = build_collective_operators<double>(spec.n, spec.omega);
  const DickeState gibbs = DickeState::gibbs(spec.n, spec.beta, spec.omega);
  const std::size_t dim = static_cast<std::size_t>(spec.n) + 1;
  std::vector<std::vector<double>> cdf(dim, std::vector<double>(dim));
  std::vector<bool> converged(dim);
  for (std::size_t from = 0; from < dim; ++from) {
    const int twice_m = -spec.n + 2 * static_cast<int>(from);
    const auto evolved =
        evolve_for(DickeState::basis(spec.n, twice_m).matrix(), ops, bath, thermalization_time);
    converged[from] = trace_distance(evolved.rho, gibbs.matrix()) < kThermalizationTolerance;
    double acc = 0.0;
    for (std::size_t to = 0; to < dim; ++to) {
      acc += std::max(0.0, evolved.rho(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(to)).real());
      cdf[from][to] = acc;
    }
  }
  std::vector<double> gibbs_cdf(dim);
  {
    double acc = 0.0;
    const auto pops = gibbs.populations();
    for (std::size_t i = 0; i < dim; ++i) gibbs_cdf[i] = acc += pops[i];
  }
  auto draw = [](const std::vector<double>& c, Rng& rng) {
    const double u = rng.uniform() * c.back();
    const auto it = std::upper_bound(c.begin(), c.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - c.begin()), c.size() - 1);
  };

  SimulationReport report = empty_report(spec, CouplingMode::collective, seed);
  report.dynamical = true;
  report.thermalization_time = thermalization_time;
  Rng rng(seed);
  std::size_t state = 0;
  for (std::uint64_t i = 0; i < n_cycles; ++i) {
    const bool first = i == 0;
    const std::size_t measured = draw(first ? gibbs_cdf : cdf[state], rng);
    const int twice_m = -spec.n + 2 * static_cast<int>(measured);
    CycleRecord rec = make_record(twice_m, spec.omega, i);
    rec.thermalized = first || converged[state];
    if (!rec.thermalized) ++report.unconverged_cycles;
    ++report.histogram[measured];
    if (records) records->push_back(rec);
    // Flip |m> -> |-m> on a positive reading.
    state = rec.measured_positive ? dim - 1 - measured : measured;
  }
  fill_moments(report);
  return report;
}

}  // namespace qie
