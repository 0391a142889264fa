#pragma once

// Fixed-precision MPFR scalars and a driver that evaluates a scalar-generic
// expression at increasing precision until two consecutive tiers agree.
//
// The tiers are compile-time precisions so concurrent evaluations never touch
// the process-wide MPFR default precision.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include <boost/multiprecision/mpfr.hpp>

#include "qie/errors.hpp"

namespace qie::precision {

template <unsigned Digits10>
using Float = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<Digits10>,
                                            boost::multiprecision::et_off>;

inline constexpr std::array<unsigned, 6> kTierDigits = {50, 100, 200, 400, 800, 1600};

template <class Fn>
double evaluate_at_tier(std::size_t tier, Fn& fn) {
  switch (tier) {
    case 0: return fn.template operator()<Float<kTierDigits[0]>>();
    case 1: return fn.template operator()<Float<kTierDigits[1]>>();
    case 2: return fn.template operator()<Float<kTierDigits[2]>>();
    case 3: return fn.template operator()<Float<kTierDigits[3]>>();
    case 4: return fn.template operator()<Float<kTierDigits[4]>>();
    case 5: return fn.template operator()<Float<kTierDigits[5]>>();
    default: throw NumericalError("precision tier out of range");
  }
}

inline std::size_t tier_for_digits(double digits) {
  for (std::size_t t = 0; t < kTierDigits.size(); ++t) {
    if (digits <= kTierDigits[t]) return t;
  }
  return kTierDigits.size();
}

/// Evaluates `fn.template operator()<S>()` (returning double) starting at the
/// tier that covers `digits_hint` (clamped to the second-highest), escalating
/// until two consecutive tiers agree to `agreement` relative. Throws
/// NumericalError when the highest tier still disagrees.
template <class Fn>
double evaluate_escalating(double digits_hint, Fn&& fn, double agreement = 1e-14) {
  std::size_t tier = std::min(tier_for_digits(digits_hint), kTierDigits.size() - 2);
  double lower = evaluate_at_tier(tier, fn);
  for (++tier; tier < kTierDigits.size(); ++tier) {
    const double upper = evaluate_at_tier(tier, fn);
    const double scale = std::abs(upper);
    if (std::abs(upper - lower) <= agreement * scale || upper == lower) return upper;
    lower = upper;
  }
  throw NumericalError("extended precision evaluation did not stabilise", lower);
}

}  // namespace qie::precision
