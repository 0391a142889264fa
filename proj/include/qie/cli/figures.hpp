#pragma once

// Data, SVG previews and checked qualitative claims for figures 2-6
// (hbar = k_B = omega = 1).

#include <string>
#include <string_view>
#include <vector>

#include "qie/cli/table.hpp"

namespace qie::cli {

struct Claim {
  std::string id;
  std::string description;
  bool passed = false;
  std::string detail;
};

struct FigureOptions {
  std::string out_dir = ".";
  unsigned threads = 1;
  bool svg = true;
  OutputFormat format = OutputFormat::csv;
};

struct FigureResult {
  std::string figure_id;
  std::vector<Claim> claims;
  /// Observations recorded in the manifest without a pass/fail verdict.
  std::vector<std::string> notes;
  /// Names relative to out_dir, manifest last.
  std::vector<std::string> files;

  bool all_passed() const;
};

const std::vector<std::string>& figure_ids();

/// Writes <id>*.csv|jsonl, <id>*.svg (unless disabled) and <id>_manifest.json
/// into out_dir. Throws std::invalid_argument for an unknown id.
FigureResult run_figure(std::string_view id, const FigureOptions& opts);

/// Points (x, y*) where the row-major field crosses `level` along y, one per
/// x column, found by linear interpolation in (log y, log value) between
/// adjacent grid nodes. Columns without a crossing are skipped.
std::vector<std::pair<double, double>> level_crossings(const std::vector<double>& x,
                                                       const std::vector<double>& y,
                                                       const std::vector<double>& values,
                                                       double level);

}  // namespace qie::cli
