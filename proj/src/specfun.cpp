#include "qie/specfun.hpp"

#include <cmath>
#include <numbers>

namespace qie {
namespace {

// glibc's lgammal writes the global signgam; the reentrant form does not.
long double log_gamma(long double x) {
  int sign = 0;
  return ::lgammal_r(x, &sign);
}

}  // namespace

double log_binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) throw DomainError("log_binomial: requires 0 <= k <= n");
  k = std::min(k, n - k);
  if (n <= 66) {
    unsigned __int128 c = 1;
    for (std::int64_t i = 1; i <= k; ++i) c = c * static_cast<unsigned __int128>(n - k + i) / i;
    return std::log(static_cast<double>(c));
  }
  const long double r = log_gamma(static_cast<long double>(n) + 1) -
                        log_gamma(static_cast<long double>(k) + 1) -
                        log_gamma(static_cast<long double>(n - k) + 1);
  return static_cast<double>(r);
}

double catalan_log(std::int64_t r) {
  if (r < 0) throw DomainError("catalan_log: requires r >= 0");
  return log_binomial(2 * r, r) - std::log(static_cast<double>(r) + 1.0);
}

double catalan_log_asymptotic(std::int64_t r) {
  if (r < 1) throw DomainError("catalan_log_asymptotic: requires r >= 1");
  const double rr = static_cast<double>(r);
  return rr * std::log(4.0) - 1.5 * std::log(rr) - 0.5 * std::log(std::numbers::pi);
}

}  // namespace qie
