#include "qie/cli/sweep.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "qie/cli/parallel.hpp"
#include "qie/closedform.hpp"
#include "qie/errors.hpp"
#include "qie/metrics.hpp"

namespace qie::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Statistic-valued outputs, in column order; R_m is handled separately.
constexpr SweepOutput kStatOutputs[] = {SweepOutput::mean_work, SweepOutput::variance,
                                        SweepOutput::nsr,       SweepOutput::lambda_w,
                                        SweepOutput::sigma,     SweepOutput::tur_q};

struct PathValues {
  WorkStatistics col, ind;
  bool has_col = false, has_ind = false;
};

PathValues evaluate_path(const EngineSpec& spec, bool closed, bool need_col, bool need_ind) {
  PathValues v;
  auto eval = [&](CouplingMode mode) {
    return closed ? work_statistics_closed_form(spec, mode) : work_statistics_direct(spec, mode);
  };
  if (need_col) {
    v.col = eval(CouplingMode::collective);
    v.has_col = true;
  }
  if (need_ind) {
    v.ind = eval(CouplingMode::independent);
    v.has_ind = true;
  }
  return v;
}

double output_value(SweepOutput out, const PathValues& v, CouplingMode mode, double beta,
                    double erasure) {
  const WorkStatistics& s = mode == CouplingMode::collective ? v.col : v.ind;
  switch (out) {
    case SweepOutput::mean_work: return s.mean;
    case SweepOutput::variance: return s.variance;
    case SweepOutput::nsr: return s.nsr;
    case SweepOutput::lambda_w: {
      if (std::isinf(v.col.log_mean) && std::isinf(v.ind.log_mean)) return kNaN;
      return std::exp(v.col.log_mean - v.ind.log_mean);
    }
    case SweepOutput::sigma: return entropy_production(s, beta, erasure);
    case SweepOutput::tur_q: return thermodynamic_uncertainty(s, beta, erasure).value_or(kNaN);
    case SweepOutput::ratio_Rm: break;
  }
  return kNaN;
}

Cell number_cell(double v) {
  if (std::isnan(v)) return std::monostate{};
  return v;
}

}  // namespace

std::string ratio_column(int twice_m) {
  return "ratio_R_" + (twice_m % 2 == 0 ? std::to_string(twice_m / 2) : format_number(twice_m / 2.0));
}

double relative_discrepancy(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

SweepResult run_sweep(const SweepConfig& config, unsigned threads) {
  config.validate();
  const bool both = config.path == SweepPath::both;
  const bool use_direct = config.path != SweepPath::closed_form;
  const bool use_closed = config.path != SweepPath::direct;

  std::vector<SweepOutput> stat_outputs;
  for (const auto o : kStatOutputs) {
    if (config.wants(o)) stat_outputs.push_back(o);
  }
  const bool want_ratio = config.wants(SweepOutput::ratio_Rm);
  const bool need_both_modes = config.wants(SweepOutput::lambda_w);

  SweepResult result;
  Table& table = result.table;
  table.columns = {"n", "beta", "omega", "mode"};
  for (const auto o : stat_outputs) {
    const std::string name(to_string(o));
    if (both) {
      table.columns.push_back(name + "_direct");
      table.columns.push_back(name + "_closed");
      table.columns.push_back(name + "_discrepancy");
    } else {
      table.columns.push_back(name);
    }
  }
  if (want_ratio) {
    for (const int tm : config.ratio_twice_m) table.columns.push_back(ratio_column(tm));
  }
  table.columns.push_back("path");
  table.columns.push_back("status");

  const std::size_t nb = config.beta_values.size();
  const std::size_t points = config.n_values.size() * nb;
  std::vector<std::vector<std::vector<Cell>>> rows(points);

  parallel_for(points, threads, [&](std::size_t p) {
    const int n = config.n_values[p / nb];
    const double beta = config.beta_values[p % nb];
    const EngineSpec spec{n, config.omega, beta};
    bool need_col = need_both_modes, need_ind = need_both_modes;
    for (const auto m : config.modes) (m == CouplingMode::collective ? need_col : need_ind) = true;

    std::optional<PathValues> direct, closed;
    std::string status = "ok";
    try {
      if (use_direct) direct = evaluate_path(spec, false, need_col, need_ind);
      if (use_closed) closed = evaluate_path(spec, true, need_col, need_ind);
    } catch (const std::exception& e) {
      status = std::string("error: ") + e.what();
    }

    for (const auto mode : config.modes) {
      std::vector<Cell> row{static_cast<std::int64_t>(n), beta, config.omega,
                            std::string(to_string(mode))};
      std::string row_status = status;
      const std::size_t value_cells = table.columns.size() - 6;
      if (row_status == "ok") {
        try {
          for (const auto o : stat_outputs) {
            if (both) {
              const double a = output_value(o, *direct, mode, beta, config.erasure_entropy);
              const double b = output_value(o, *closed, mode, beta, config.erasure_entropy);
              row.push_back(number_cell(a));
              row.push_back(number_cell(b));
              row.push_back(number_cell(std::isnan(a) || std::isnan(b) ? kNaN
                                                                       : relative_discrepancy(a, b)));
            } else {
              const PathValues& v = direct ? *direct : *closed;
              row.push_back(number_cell(output_value(o, v, mode, beta, config.erasure_entropy)));
            }
          }
          if (want_ratio) {
            for (const int tm : config.ratio_twice_m) {
              const bool valid = tm <= n && (tm + n) % 2 == 0;
              row.push_back(valid ? number_cell(probability_ratio(spec, tm)) : Cell{});
            }
          }
        } catch (const std::exception& e) {
          row_status = std::string("error: ") + e.what();
        }
      }
      if (row_status != "ok") row.resize(4);
      row.resize(4 + value_cells);
      row.push_back(std::string(to_string(config.path)));
      row.push_back(row_status);
      rows[p].push_back(std::move(row));
    }
  });

  for (auto& group : rows) {
    for (auto& row : group) {
      if (std::get<std::string>(row.back()) != "ok") ++result.failed_rows;
      table.add_row(std::move(row));
    }
  }
  return result;
}

}  // namespace qie::cli
