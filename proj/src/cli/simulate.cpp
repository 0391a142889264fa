#include "qie/cli/simulate.hpp"

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qie/cli/table.hpp"
#include "qie/errors.hpp"

namespace qie::cli {
namespace {

using Field = std::pair<std::string, Cell>;

std::vector<Field> fields(const SimulateOutcome& o, const SimulateOptions& opts) {
  const auto& r = o.report;
  std::vector<Field> f{
      {"n", std::int64_t{r.spec.n}},
      {"omega", r.spec.omega},
      {"beta", r.spec.beta},
      {"mode", std::string(to_string(r.mode))},
      {"n_cycles", static_cast<std::int64_t>(r.n_cycles)},
      {"seed", std::to_string(r.seed)},
      {"rng_algorithm", r.rng_algorithm},
      {"empirical_mean", r.empirical_mean},
      {"empirical_variance", r.empirical_variance},
      {"standard_error", r.standard_error},
      {"positive_cycles", static_cast<std::int64_t>(r.positive_cycles)},
      {"analytic_mean", o.analytic_mean},
      {"analytic_variance", o.analytic_variance},
      {"z_mean", o.z_mean},
      {"dynamical", std::string(r.dynamical ? "true" : "false")},
  };
  if (r.dynamical) {
    f.emplace_back("gamma", opts.gamma);
    f.emplace_back("thermalization_time", r.thermalization_time);
    f.emplace_back("unconverged_cycles", static_cast<std::int64_t>(r.unconverged_cycles));
  }
  return f;
}

void write_records(const std::vector<CycleRecord>& records, const std::string& path) {
  Table t;
  t.columns = {"cycle_index", "m", "measured_positive", "work_extracted", "thermalized"};
  t.rows.reserve(records.size());
  for (const auto& rec : records) {
    t.rows.push_back({static_cast<std::int64_t>(rec.cycle_index), rec.m(),
                      std::int64_t{rec.measured_positive}, rec.work_extracted,
                      std::int64_t{rec.thermalized}});
  }
  write_table_file(t, OutputFormat::csv, path);
}

}  // namespace

SimulateOutcome run_simulation(const SimulateOptions& opts) {
  opts.spec.validate();
  if (opts.cycles < 1) throw DomainError("simulate: cycles must be >= 1");
  SimulateOutcome out;
  std::vector<CycleRecord> records;
  if (opts.dynamical) {
    if (opts.mode != CouplingMode::collective) {
      throw DomainError("simulate: --dynamical supports the collective mode only");
    }
    const BathSpec bath{opts.spec.beta, opts.gamma, opts.spec.omega};
    out.report = run_cycles_dynamical(opts.spec, bath, opts.cycles, opts.thermalization_time,
                                      opts.seed, opts.records_path.empty() ? nullptr : &records);
  } else {
    out.report = run_cycles(opts.spec, opts.mode, opts.cycles, opts.seed, RunOptions{opts.threads});
    if (!opts.records_path.empty()) records = sample_cycles(opts.spec, opts.mode, opts.cycles, opts.seed);
  }
  if (!opts.records_path.empty()) write_records(records, opts.records_path);

  const auto exact = work_statistics_direct(opts.spec, opts.mode);
  out.analytic_mean = exact.mean;
  out.analytic_variance = exact.variance;
  out.z_mean = out.report.standard_error > 0
                   ? (out.report.empirical_mean - exact.mean) / out.report.standard_error
                   : std::numeric_limits<double>::quiet_NaN();
  return out;
}

std::string format_key_value(const SimulateOutcome& outcome, const SimulateOptions& opts) {
  std::string s;
  for (const auto& [key, value] : fields(outcome, opts)) s += key + "=" + format_cell(value) + "\n";
  return s;
}

std::string format_json(const SimulateOutcome& outcome, const SimulateOptions& opts) {
  nlohmann::ordered_json j;
  for (const auto& [key, value] : fields(outcome, opts)) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::monostate>) {
            j[key] = nullptr;
          } else if constexpr (std::is_same_v<T, double>) {
            j[key] = std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
          } else {
            j[key] = v;
          }
        },
        value);
  }
  j["seed"] = outcome.report.seed;
  return j.dump(2) + "\n";
}

}  // namespace qie::cli
