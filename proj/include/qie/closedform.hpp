#pragma once

// Analytic work statistics: the beta -> 0 results, the finite-temperature
// hypergeometric/exponential closed forms for both coupling modes, and the
// continuum (large-n) approximations for the collective engine.
//
// The finite-temperature forms cancel catastrophically in double precision
// (e.g. <W_ind> ~ 1e-19 built from O(n) terms at beta*omega = 5), so the
// public double API evaluates the scalar-generic kernels in closedform_impl.hpp
// at escalating MPFR precision.

#include <string_view>

#include "qie/statmech.hpp"

namespace qie {

enum class Moment { mean, variance };

/// Identifier of the closed form used for (mode, parity of n, moment):
/// "A1".."A8" for finite temperature.
std::string_view appendix_formula_id(CouplingMode mode, int n, Moment moment);

/// (n+1) omega / 4 for odd n, n (n+2) omega / (4 (n+1)) for even n.
double mean_work_hot_collective(int n, double omega = 1.0);

/// 2^-(n+1) C(n, (n+1)/2) (n+1) omega for odd n, 2^-(n+1) C(n, n/2) n omega for even n.
double mean_work_hot_independent(int n, double omega = 1.0);

double mean_work_hot(int n, CouplingMode mode, double omega = 1.0);

/// beta -> 0 variance as the literal finite sums over r = 0..r_max.
double variance_hot(int n, CouplingMode mode, double omega = 1.0);

/// n -> infinity limit of the beta -> 0 noise-to-signal ratio:
/// 5/3 collective, pi - 1 independent.
double nsr_hot_asymptote(CouplingMode mode);

/// Finite-temperature mean work (beta > 0, finite).
double mean_work_finite_T(int n, double beta, double omega, CouplingMode mode);

/// Finite-temperature work variance (beta > 0, finite).
double variance_finite_T(int n, double beta, double omega, CouplingMode mode);

/// Continuum approximation of the collective mean work.
double mean_work_large_n(int n, double beta, double omega);

/// Continuum approximation of the collective <W^2>.
double second_moment_large_n(int n, double beta, double omega);

/// Hot-limit forms at beta = 0, finite-temperature forms otherwise.
WorkStatistics work_statistics_closed_form(const EngineSpec& spec, CouplingMode mode);

/// Collective mode only; path = large_n_integral.
WorkStatistics work_statistics_large_n(const EngineSpec& spec);

/// Decimal digits requested before escalation for the finite-temperature forms.
double finite_T_digits_hint(int n, double x);

}  // namespace qie
