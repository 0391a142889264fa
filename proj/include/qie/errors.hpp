#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace qie {

/// Argument outside the supported mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative or extended-precision evaluation could not reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what,
                          double partial_sum = std::numeric_limits<double>::quiet_NaN(),
                          long terms_used = 0)
      : std::runtime_error(what), partial_sum_(partial_sum), terms_used_(terms_used) {}

  double partial_sum() const noexcept { return partial_sum_; }
  long terms_used() const noexcept { return terms_used_; }

 private:
  double partial_sum_;
  long terms_used_;
};

/// A quantity that is non-negative by construction came out negative.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qie
