#pragma once

// Scalar-generic kernels behind closedform.hpp. Arguments are the qubit
// count n and x = beta * omega; results are in units of omega (mean) and
// omega^2 (variance, second moment).

#include <cmath>
#include <type_traits>

#include <boost/math/constants/constants.hpp>

#include "qie/specfun.hpp"
#include "qie/statmech.hpp"

namespace qie::closedform_impl {

template <class S>
S log_gamma(const S& x) {
  if constexpr (std::is_same_v<S, double>) {
    int sign = 0;
    return ::lgamma_r(x, &sign);
  } else {
    return lgamma(x);
  }
}

/// ln(1 + e^x) without overflow.
template <class S>
S log1p_exp(const S& x) {
  using std::exp;
  using std::log1p;
  return x > 0 ? S(x + log1p(exp(-x))) : S(log1p(exp(x)));
}

template <class S>
S pi() {
  return boost::math::constants::pi<S>();
}

template <class S>
S ln2() {
  return boost::math::constants::ln_two<S>();
}

// ---- independent coupling -------------------------------------------------

/// <W_ind>, even n.
template <class S>
S mean_independent_even(int n, const S& x) {
  using L = LogNumber<S>;
  using std::exp;
  using std::log;
  using std::tanh;
  const S nn(n);
  const S log_pre = nn * ln2<S>() + log_gamma(S((nn + 1) / 2)) + x * (nn + 2) / 2 -
                    log(pi<S>()) / 2 - log1p_exp(x) - log_gamma(S(nn / 2 + 2));
  const L f1 = hyp2f1_log<S>(nn / 2, nn + 1, nn / 2 + 2, -exp(x));
  return nn * ((L::from_log(log_pre) * f1).value() - tanh(x / 2));
}

/// <W_ind>, odd n.
template <class S>
S mean_independent_odd(int n, const S& x) {
  using L = LogNumber<S>;
  using std::exp;
  using std::log;
  using std::tanh;
  const S nn(n);
  const S a = (1 - nn) / 2;
  const S c = (nn + 3) / 2;
  const S log_pre = nn * ln2<S>() + log_gamma(S(nn / 2 + 1)) + x * (nn + 1) / 2 -
                    log(pi<S>()) / 2 - log_gamma(c) - nn * log1p_exp(x);
  const S z = -exp(x);
  const L fa = hyp2f1_log<S>(S(2), a, c, z);
  const L fb = hyp2f1_log<S>(S(1), a, c, z);
  const L bracket = L::from_value(S(2)) * fa - fb;
  return (L::from_log(log_pre) * bracket).value() - nn * tanh(x / 2);
}

/// var(W_ind), even n.
template <class S>
S variance_independent_even(int n, const S& x) {
  using L = LogNumber<S>;
  using std::cosh;
  using std::exp;
  using std::expm1;
  using std::log;
  const S nn(n);
  const S z = -exp(x);
  const S log_g =
      log_gamma(S(nn + 1)) + x * nn / 2 - log_gamma(S(nn / 2 + 2)) - log_gamma(S(nn / 2));
  const S log_p = nn * ln2<S>() + log_gamma(S((nn + 1) / 2)) + x * (nn + 2) / 2 -
                  log(pi<S>()) / 2 - log_gamma(S(nn / 2 + 2));
  const L f1 = hyp2f1_log<S>(nn / 2, nn + 1, nn / 2 + 2, z);
  const L f2 = hyp2f1_log<S>(S(1), 1 - nn / 2, nn / 2 + 2, z);
  const S g_f1 = (L::from_log(log_g) * f1).value();
  const S p_f1 = (L::from_log(log_p) * f1).value();
  const S g_f2 = (L::from_log(log_g + (1 - nn) * log1p_exp(x)) * f2).value();
  const S brace = 4 * nn + 2 * g_f1 * (-nn * p_f1 + nn * expm1(x) - 2) - 2 * nn * g_f2;
  const S ch = cosh(x / 2);
  return brace / (4 * ch * ch);
}

/// var(W_ind), odd n.
template <class S>
S variance_independent_odd(int n, const S& x) {
  using L = LogNumber<S>;
  using std::cosh;
  using std::exp;
  using std::expm1;
  using std::log;
  const S nn(n);
  const S c = (nn + 3) / 2;
  const S ex = exp(x);
  const S fb = hyp2f1_log<S>(S(1), (1 - nn) / 2, c, -ex).value();
  const S log_q = -2 * nn * log1p_exp(x) - ln2<S>() - 2 * log_gamma(c);
  const S log_t1 = (2 * nn + 1) * ln2<S>() + 2 * log_gamma(S(nn / 2 + 1)) + x * (nn + 1);
  const S b1 = nn * expm1(x) * fb + nn + 1;
  const S log_t2 = log(pi<S>()) + log(S(nn + 1)) + log_gamma(S(nn + 1)) + x * (nn + 1) / 2 +
                   nn * log1p_exp(x);
  const S b2 = -2 * nn * ex * (nn * cosh(x) - nn - 2) * fb - (nn + 1) * (nn + 1) * expm1(x);
  const S t1 = exp(log_q + log_t1) * b1 * b1;
  const S t2 = (L::from_log(log_q + log_t2) * L::from_value(b2)).value();
  const S brace = 4 * pi<S>() * nn * ex - (t1 + t2);
  return brace / (pi<S>() * exp(2 * log1p_exp(x)));
}

// ---- collective coupling --------------------------------------------------

template <class S>
S collective_denominator(int n, const S& x) {
  using std::expm1;
  return expm1(x) * expm1(x * (n + 1));
}

/// <W_col>, even n.
template <class S>
S mean_collective_even(int n, const S& x) {
  using std::exp;
  const S nn(n);
  const S num = 2 * exp(x * (nn + 2) / 2) - (nn + 2) * exp(x) + nn;
  return num / collective_denominator(n, x);
}

/// <W_col>, odd n.
template <class S>
S mean_collective_odd(int n, const S& x) {
  using std::exp;
  const S nn(n);
  const S num = exp(x * (nn + 1) / 2) + exp(x * (nn + 3) / 2) - (nn + 2) * exp(x) + nn;
  return num / collective_denominator(n, x);
}

/// var(W_col), even n.
template <class S>
S variance_collective_even(int n, const S& x) {
  using std::exp;
  const S nn(n);
  const S d = collective_denominator(n, x);
  const S brace = -nn * nn * exp(x * nn) + 4 * exp(x + 3 * x * nn / 2) +
                  4 * exp(x * (3 * nn + 4) / 2) - (nn + 2) * (nn + 2) * exp(x * (nn + 2)) -
                  4 * (nn + 1) * exp(x * nn / 2) + 4 * (nn + 1) * exp(x * (nn + 2) / 2) +
                  2 * (nn * (nn + 2) - 4) * exp(x * (nn + 1)) + 4;
  return exp(x) * brace / (d * d);
}

/// var(W_col), odd n.
template <class S>
S variance_collective_odd(int n, const S& x) {
  using std::exp;
  const S nn(n);
  const S d = collective_denominator(n, x);
  const S brace = 4 * exp(x / 2) - (nn * nn + 1) * exp(x / 2 + x * nn) +
                  2 * (nn - 1) * (nn + 3) * exp(3 * x / 2 + x * nn) + exp(x + 3 * x * nn / 2) -
                  2 * exp(x * (nn + 2) / 2) + exp(3 * x * (nn + 2) / 2) +
                  6 * exp(x * (3 * nn + 4) / 2) - (2 * nn + 1) * exp(x * nn / 2) +
                  (2 * nn + 3) * exp(x * (nn + 4) / 2) -
                  (nn * (nn + 4) + 5) * exp(5 * x / 2 + x * nn);
  return exp(x / 2) * brace / (d * d);
}

template <class S>
S mean_finite_T(int n, const S& x, CouplingMode mode) {
  const bool even = n % 2 == 0;
  if (mode == CouplingMode::collective) {
    return even ? mean_collective_even(n, x) : mean_collective_odd(n, x);
  }
  return even ? mean_independent_even(n, x) : mean_independent_odd(n, x);
}

template <class S>
S variance_finite_T(int n, const S& x, CouplingMode mode) {
  const bool even = n % 2 == 0;
  if (mode == CouplingMode::collective) {
    return even ? variance_collective_even(n, x) : variance_collective_odd(n, x);
  }
  return even ? variance_independent_even(n, x) : variance_independent_odd(n, x);
}

// ---- continuum approximation (collective) ----------------------------------

/// Below this value of a = beta n omega the 0/0 forms switch to their Taylor
/// expansions.
inline constexpr double kLargeNSeriesThreshold = 1e-6;

template <class S>
S mean_large_n(int n, const S& x) {
  using std::exp;
  using std::expm1;
  const S nn(n);
  const S r(r_max(n));
  const S delta = nn - 2 * r;
  const S a = nn * x;
  if (a < S(kLargeNSeriesThreshold)) {
    const S c2 = r * r + delta * r;
    const S c3 = r * r * r / 3 + delta * r * r / 2;
    const S c4 = r * r * r * r / 12 + delta * r * r * r / 6;
    return (c2 + c3 * x + c4 * x * x) / (nn + nn * nn * x / 2 + nn * nn * nn * x * x / 6);
  }
  return ((delta * x + 2) * exp(x * r) - a - 2) / (x * expm1(a));
}

template <class S>
S second_moment_large_n(int n, const S& x) {
  using std::exp;
  using std::expm1;
  const S nn(n);
  const S r(r_max(n));
  const S delta = nn - 2 * r;
  const S a = nn * x;
  if (a < S(kLargeNSeriesThreshold)) {
    // Coefficients of x^k in e^{r x} (delta^2 x^2 + 4 delta x + 8); k = 0..2 cancel.
    auto coeff = [&](int k) {
      S fact_k(1), fact_k1(1), fact_k2(1);
      for (int i = 2; i <= k; ++i) fact_k *= i;
      for (int i = 2; i <= k - 1; ++i) fact_k1 *= i;
      for (int i = 2; i <= k - 2; ++i) fact_k2 *= i;
      using std::pow;
      return 8 * pow(r, k) / fact_k + 4 * delta * pow(r, k - 1) / fact_k1 +
             delta * delta * pow(r, k - 2) / fact_k2;
    };
    return (coeff(3) + coeff(4) * x + coeff(5) * x * x) /
           (nn + nn * nn * x / 2 + nn * nn * nn * x * x / 6);
  }
  const S b = delta * x;
  const S big_a = a * (a + 4) + 8;
  const S big_b = b * (b + 4) + 8;
  return (exp(x * r) * big_b - big_a) / (x * x * expm1(a));
}

}  // namespace qie::closedform_impl
