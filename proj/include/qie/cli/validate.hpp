#pragma once

// Cross-validation matrix: closed forms vs direct sums, independent mode vs
// exhaustive enumeration, Lindblad steady states vs the Gibbs state, Monte
// Carlo vs analytic moments, asymptotes and the second law.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qie/statmech.hpp"

namespace qie::cli {

enum class ValidationLevel { quick, full };

ValidationLevel parse_validation_level(std::string_view text);
std::string_view to_string(ValidationLevel level);

struct CheckResult {
  std::string id;
  std::string group;
  bool passed = false;
  /// Worst observed discrepancy in the check's own metric.
  double worst = 0.0;
  double tolerance = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct ValidationReport {
  ValidationLevel level = ValidationLevel::quick;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  std::string to_json() const;
};

/// Finite-temperature closed forms under test; swap in a faulty one to check
/// that the suite localizes it.
struct ClosedFormProvider {
  std::function<double(int n, double beta, double omega, CouplingMode mode)> mean;
  std::function<double(int n, double beta, double omega, CouplingMode mode)> variance;

  static ClosedFormProvider standard();
};

struct ValidateOptions {
  ValidationLevel level = ValidationLevel::quick;
  unsigned threads = 1;
  ClosedFormProvider provider = ClosedFormProvider::standard();
};

ValidationReport run_validation(const ValidateOptions& opts);

}  // namespace qie::cli
