#pragma once

#include <cstddef>
#include <utility>

#include "retint/errors.hpp"

namespace retint {

/// g_gamma = [Gamma((1+gamma)/gamma)]^gamma, the constant of the normalized
/// interval distribution. Finite and positive for gamma in (0, 1].
struct GammaConstant {
    double gamma;
    double g;
};

GammaConstant g_gamma(double gamma);

/// Solved constants of the lower-cutoff interval distribution
///   f(r) = B r^{-(1-gamma)} exp(-(A/gamma) r^gamma),  r >= s0 = 1/<r>,
/// with both the total probability and the mean normalized to one.
struct TheoryParams {
    double gamma;
    double mean_r;
    double s0;  // 1/mean_r, lower edge of the support in scaled units
    double p0;  // root of the transcendental normalization equation
    double A;
    double B;   // B = A * exp(p0)
};

/// Exponential density e^{-R} for intervals of an uncorrelated series
/// (mean interval scaled to one).
double pdf_uncorrelated(double R);

/// Plain stretched exponential A_c * exp(-B_c R^gamma), the empirical form
/// that precedes the power-law x stretched-exponential product.
double pdf_stretched(double R, double gamma, double A_c, double B_c);

/// Constants (A_c, B_c) that normalize pdf_stretched to unit probability
/// and unit mean.
std::pair<double, double> normalized_stretched_constants(double gamma);

/// gamma * g * R^{-(1-gamma)} * exp(-g R^gamma) with g = g_gamma(gamma).
/// Defined for R > 0; diverges (integrably) as R -> 0 when gamma < 1, and
/// reduces to e^{-R} at gamma = 1.
double pdf_normalized(double R, double gamma);

/// Upper incomplete gamma function Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt.
/// Power series for x < s+1, Lentz continued fraction otherwise.
double upper_incomplete_gamma(double s, double x);

/// log Gamma(s, x); usable where the value itself would underflow.
double log_upper_incomplete_gamma(double s, double x);

/// Solve the normalization equations of the cutoff distribution for a given
/// (gamma, mean interval): finds p0 with
///   1/s0 = 1 + e^p Gamma(1/gamma, p) / (gamma p^{1/gamma})
/// by bracketed root search, then A = gamma p0 / s0^gamma and B = A e^{p0}.
/// No closed form exists except at gamma = 1, where p0 = s0/(1-s0).
TheoryParams solve_constants(double gamma, double mean_r);

/// Density of the cutoff distribution at r (scaled units, r >= s0).
double pdf_cutoff(double r, const TheoryParams& params);

/// CDF of the cutoff distribution: 1 - exp(p0 - (A/gamma) r^gamma) for
/// r >= s0, 0 below the support.
double cdf_cutoff(double r, const TheoryParams& params);

/// Small-R power-law exponent -(1-gamma) of the normalized distribution.
double asymptote_small_R(double gamma);

/// Large-R stretched-exponential parameters (g_gamma, gamma).
std::pair<double, double> asymptote_large_R(double gamma);

/// Ratio sum_{j=1}^{m-1} j^{gamma-1} / m^gamma, computed by compensated
/// direct summation; converges to 1/gamma as m -> infinity.
double harmonic_limit_check(double gamma, std::size_t m);

}  // namespace retint
