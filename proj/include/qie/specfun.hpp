#pragma once

// Log-domain combinatorics, stable sums and the Gauss hypergeometric function.
//
// Everything here is templated on the scalar type so the same code runs in
// double and in the fixed-precision MPFR types of precision.hpp.

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qie/errors.hpp"

namespace qie {

/// A real number stored as (sign, ln|x|).
template <class Scalar = double>
class LogNumber {
 public:
  LogNumber() = default;

  static LogNumber from_log(const Scalar& log_magnitude, int sign = 1) {
    LogNumber r;
    if (sign == 0 || log_magnitude == -std::numeric_limits<Scalar>::infinity()) return r;
    r.log_magnitude_ = log_magnitude;
    r.sign_ = sign > 0 ? 1 : -1;
    return r;
  }

  static LogNumber from_value(const Scalar& x) {
    using std::abs;
    using std::log;
    if (x == 0) return {};
    return from_log(log(abs(x)), x < 0 ? -1 : 1);
  }

  static LogNumber one() { return from_log(Scalar(0), 1); }

  const Scalar& log_magnitude() const { return log_magnitude_; }
  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }

  Scalar value() const {
    using std::exp;
    if (sign_ == 0) return Scalar(0);
    return sign_ > 0 ? Scalar(exp(log_magnitude_)) : Scalar(-exp(log_magnitude_));
  }

  LogNumber operator-() const {
    LogNumber r = *this;
    r.sign_ = -r.sign_;
    return r;
  }

  friend LogNumber operator*(const LogNumber& a, const LogNumber& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return from_log(a.log_magnitude_ + b.log_magnitude_, a.sign_ * b.sign_);
  }

  friend LogNumber operator/(const LogNumber& a, const LogNumber& b) {
    if (b.is_zero()) throw DomainError("LogNumber: division by zero");
    if (a.is_zero()) return {};
    return from_log(a.log_magnitude_ - b.log_magnitude_, a.sign_ * b.sign_);
  }

  friend LogNumber operator+(const LogNumber& a, const LogNumber& b) {
    using std::exp;
    using std::log1p;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const LogNumber& big = a.log_magnitude_ >= b.log_magnitude_ ? a : b;
    const LogNumber& small = a.log_magnitude_ >= b.log_magnitude_ ? b : a;
    const Scalar d = small.log_magnitude_ - big.log_magnitude_;
    if (big.sign_ == small.sign_) return from_log(big.log_magnitude_ + log1p(exp(d)), big.sign_);
    if (d == 0) return {};
    return from_log(big.log_magnitude_ + log1p(-exp(d)), big.sign_);
  }

  friend LogNumber operator-(const LogNumber& a, const LogNumber& b) { return a + (-b); }

  LogNumber& operator*=(const LogNumber& o) { return *this = *this * o; }
  LogNumber& operator+=(const LogNumber& o) { return *this = *this + o; }

  /// |x|^p carrying the sign of x only for p == 1; requires x > 0 otherwise.
  LogNumber pow(const Scalar& p) const {
    if (is_zero()) return {};
    if (sign_ < 0) throw DomainError("LogNumber::pow of a negative number");
    return from_log(log_magnitude_ * p, 1);
  }

 private:
  Scalar log_magnitude_{0};
  int sign_ = 0;
};

/// ln C(n, k). Exact integer arithmetic up to n = 66, log-gamma beyond.
double log_binomial(std::int64_t n, std::int64_t k);

/// ln of the r-th Catalan number, C(2r, r) / (r + 1).
double catalan_log(std::int64_t r);

/// Large-r form ln(4^r / (r sqrt(pi r))); r >= 1.
double catalan_log_asymptotic(std::int64_t r);

/// ln sum_i exp(t_i) by max-shift. Entries may be -inf.
template <class Scalar>
Scalar log_sum_exp(std::span<const Scalar> terms) {
  using std::exp;
  using std::log;
  if (terms.empty()) throw DomainError("log_sum_exp: empty input");
  const Scalar top = *std::max_element(terms.begin(), terms.end());
  if (top == -std::numeric_limits<Scalar>::infinity()) return top;
  if (top == std::numeric_limits<Scalar>::infinity()) return top;
  Scalar sum(0);
  for (const auto& t : terms) sum += exp(t - top);
  return top + log(sum);
}

inline double log_sum_exp(std::span<const double> terms) { return log_sum_exp<double>(terms); }
inline double log_sum_exp(const std::vector<double>& terms) {
  return log_sum_exp<double>(std::span<const double>(terms));
}

/// Sum of signed log-domain terms: positive and negative parts are reduced
/// separately with log_sum_exp and combined once.
template <class Scalar>
LogNumber<Scalar> signed_log_sum(std::span<const LogNumber<Scalar>> terms) {
  std::vector<Scalar> pos, neg;
  for (const auto& t : terms) {
    if (t.sign() > 0) pos.push_back(t.log_magnitude());
    else if (t.sign() < 0) neg.push_back(t.log_magnitude());
  }
  LogNumber<Scalar> p, q;
  if (!pos.empty()) p = LogNumber<Scalar>::from_log(log_sum_exp<Scalar>(pos), 1);
  if (!neg.empty()) q = LogNumber<Scalar>::from_log(log_sum_exp<Scalar>(neg), -1);
  return p + q;
}

struct Hyp2f1Options {
  /// Relative tolerance of the non-terminating series; 0 selects 1e-13 for
  /// double and 10 epsilon for wider types.
  double tolerance = 0.0;
  long max_terms = 1'000'000;
};

namespace detail {

/// N when x lies within 1e-9 of -N for a non-negative integer N.
template <class Scalar>
std::optional<long> nonpositive_integer(const Scalar& x) {
  using std::abs;
  using std::round;
  if (x > Scalar(1e-9)) return std::nullopt;
  const Scalar r = round(x);
  if (abs(x - r) > Scalar(1e-9)) return std::nullopt;
  return -static_cast<long>(r);
}

template <class Scalar>
Scalar series_tolerance(const Hyp2f1Options& opts) {
  if (opts.tolerance > 0) return Scalar(opts.tolerance);
  if constexpr (std::is_same_v<Scalar, double>) return Scalar(1e-13);
  else return 10 * std::numeric_limits<Scalar>::epsilon();
}

/// Finite sum k = 0..n_terms of (a)_k (b)_k / ((c)_k k!) z^k.
template <class Scalar>
LogNumber<Scalar> hyp2f1_finite(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& z,
                                long last) {
  using L = LogNumber<Scalar>;
  std::vector<L> terms;
  terms.reserve(static_cast<std::size_t>(last) + 1);
  L term = L::one();
  terms.push_back(term);
  const L lz = L::from_value(z);
  for (long k = 0; k < last; ++k) {
    const Scalar kk(k);
    term = term * L::from_value(a + kk) * L::from_value(b + kk) * lz /
           (L::from_value(c + kk) * L::from_value(kk + 1));
    if (term.is_zero()) break;
    terms.push_back(term);
  }
  return signed_log_sum<Scalar>(terms);
}

template <class Scalar>
void check_c(const Scalar& a, const Scalar& b, const Scalar& c) {
  const auto nc = nonpositive_integer(c);
  if (!nc) return;
  const auto na = nonpositive_integer(a);
  const auto nb = nonpositive_integer(b);
  const bool ends_first = (na && *na <= *nc) || (nb && *nb <= *nc);
  if (!ends_first) throw DomainError("hyp2f1: c is a non-positive integer");
}

}  // namespace detail

/// Direct power series of 2F1 for |z| < 1, summed until the geometric tail
/// bound falls below the relative tolerance.
template <class Scalar>
Scalar hyp2f1_series(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& z,
                     const Hyp2f1Options& opts = {}) {
  using std::abs;
  detail::check_c(a, b, c);
  if (!(abs(z) < 1)) throw DomainError("hyp2f1_series: requires |z| < 1");
  const Scalar tol = detail::series_tolerance<Scalar>(opts);
  Scalar sum(1), term(1);
  const Scalar az = abs(z);
  for (long k = 0; k < opts.max_terms; ++k) {
    const Scalar kk(k);
    const Scalar factor = (a + kk) * (b + kk) / ((c + kk) * (kk + 1));
    term *= factor * z;
    sum += term;
    if (term == 0) return sum;
    const Scalar next = abs((a + kk + 1) * (b + kk + 1) / ((c + kk + 1) * (kk + 2))) * az;
    const Scalar ratio = next > az ? next : az;
    if (ratio < 1 && abs(term) * ratio / (1 - ratio) <= tol * abs(sum)) return sum;
  }
  throw NumericalError("hyp2f1: series did not converge within the term cap",
                       static_cast<double>(sum), opts.max_terms);
}

/// Gauss hypergeometric 2F1(a, b; c; z) for real z < 1, in log-domain form.
///
/// Terminating parameters (a or b a non-positive integer, to 1e-9) give a
/// finite sum. Otherwise z in [0, 1) is summed directly and z < 0 goes
/// through the Pfaff transformation to z / (z - 1) in (0, 1), choosing the
/// variant that terminates when one does.
template <class Scalar>
LogNumber<Scalar> hyp2f1_log(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& z,
                             const Hyp2f1Options& opts = {}) {
  using L = LogNumber<Scalar>;
  using std::log1p;
  using std::round;
  detail::check_c(a, b, c);
  if (z == 0) return L::one();
  if (!(z < 1)) throw DomainError("hyp2f1: supported domain is z < 1");

  const auto na = detail::nonpositive_integer(a);
  const auto nb = detail::nonpositive_integer(b);
  if (na || nb) {
    // Snap the terminating parameter so float noise cannot leak into later terms.
    const long last = std::min(na.value_or(LONG_MAX), nb.value_or(LONG_MAX));
    const Scalar sa = (na && *na == last) ? Scalar(-last) : a;
    const Scalar sb = (na && *na == last) ? b : Scalar(-last);
    return detail::hyp2f1_finite(sa, sb, c, z, last);
  }

  if (z > 0) return L::from_value(hyp2f1_series(a, b, c, z, opts));

  const Scalar x = z / (z - 1);
  const Scalar log1mz = log1p(-z);
  if (const auto m = detail::nonpositive_integer(Scalar(c - b))) {
    return L::from_log(-a * log1mz) * detail::hyp2f1_finite(a, Scalar(-*m), c, x, *m);
  }
  if (const auto m = detail::nonpositive_integer(Scalar(c - a))) {
    return L::from_log(-b * log1mz) * detail::hyp2f1_finite(Scalar(-*m), b, c, x, *m);
  }
  return L::from_log(-a * log1mz) * L::from_value(hyp2f1_series(a, Scalar(c - b), c, x, opts));
}

template <class Scalar>
Scalar hyp2f1(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& z,
              const Hyp2f1Options& opts = {}) {
  return hyp2f1_log(a, b, c, z, opts).value();
}

inline double hyp2f1(double a, double b, double c, double z, const Hyp2f1Options& opts = {}) {
  return hyp2f1_log<double>(a, b, c, z, opts).value();
}

}  // namespace qie
