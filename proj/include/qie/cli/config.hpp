#pragma once

// Sweep configuration, read from YAML:
//
//   sweep:
//     n: [1, 2, 3]                      # or {from: 1, to: 50, step: 1}
//     beta: {from: 0.01, to: 5, count: 200, spacing: log, include_zero: true}
//                                       # or an explicit list; .inf allowed
//     omega: 1.0
//     modes: [collective, independent]
//     erasure_entropy: 0.6931471805599453
//     outputs: [mean_work, variance, nsr, lambda_w, sigma, tur_q, ratio_Rm]
//     ratio_m: [1, 2, 3]                # m values for ratio_Rm columns
//     path: direct                      # direct | closed_form | both
//
// n and beta are sorted and deduplicated; only `n` and `beta` are required.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qie/metrics.hpp"
#include "qie/statmech.hpp"

namespace qie::cli {

enum class SweepPath { direct, closed_form, both };
enum class SweepOutput { mean_work, variance, nsr, lambda_w, sigma, tur_q, ratio_Rm };

std::string_view to_string(SweepPath path);
std::string_view to_string(SweepOutput output);

struct SweepConfig {
  std::vector<int> n_values;
  std::vector<double> beta_values;
  double omega = 1.0;
  std::vector<CouplingMode> modes{CouplingMode::collective, CouplingMode::independent};
  double erasure_entropy = kMinimalErasureEntropy;
  std::vector<SweepOutput> outputs{SweepOutput::mean_work, SweepOutput::variance,
                                   SweepOutput::nsr,       SweepOutput::lambda_w,
                                   SweepOutput::sigma,     SweepOutput::tur_q};
  /// 2m for each requested R_m column.
  std::vector<int> ratio_twice_m{2, 4, 6};
  SweepPath path = SweepPath::direct;

  bool wants(SweepOutput output) const;
  /// Throws ConfigError when a grid is empty or a value is out of range.
  void validate() const;
};

/// Malformed configuration; `line` is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, int line, const std::string& message);
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string field_;
  std::string message_;
  int line_;
};

SweepConfig parse_sweep_config(std::string_view yaml_text);
SweepConfig load_sweep_config(const std::string& path);

/// `count` points from `from` to `to` inclusive, log- or linearly spaced.
std::vector<double> spaced_grid(double from, double to, int count, bool log_spacing);

}  // namespace qie::cli
