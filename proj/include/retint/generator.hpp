#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "retint/timeseries.hpp"

namespace retint {

/// Long-range correlated Gaussian series with autocorrelation exponent
/// gamma in (0, 1), synthesized by spectral (Fourier) filtering of white
/// Gaussian noise with S(f) ~ f^{-(1-gamma)} and the DC weight zeroed,
/// then re-standardized. Deterministic for fixed (n, gamma, seed).
/// n must be a power of two, n >= 2^10.
TimeSeries generate_lrc_gaussian(std::size_t n, double gamma, std::uint64_t seed);

/// Standardized i.i.d. Gaussian series (the uncorrelated baseline);
/// gamma_target is recorded as 1.
TimeSeries generate_iid_gaussian(std::size_t n, std::uint64_t seed);

/// Sample autocorrelation (biased, 1/n normalization) with a power-law fit
/// of log C(tau) against log tau over the requested lag range.
struct AcfEstimate {
    std::vector<std::size_t> lags;  // 1..max_lag
    std::vector<double> acf;
    double fitted_gamma;            // negated log-log slope
    std::pair<std::size_t, std::size_t> fit_range;
    double stderr_gamma;
    std::size_t usable_points;      // lags in range with C(tau) > 0
};

/// Fit uses only lags with strictly positive sample ACF; throws
/// EstimationError (carrying the usable count) when fewer than 10 lags or
/// less than 60% of the fit range are usable, as for uncorrelated or
/// otherwise degenerate input with no power-law range.
AcfEstimate estimate_autocorrelation(const TimeSeries& series, std::size_t max_lag,
                                     std::pair<std::size_t, std::size_t> fit_range);

/// Periodogram |X_k|^2 / n at the positive frequencies k = 1 .. n/2
/// (frequency k/n cycles per sample).
std::vector<double> periodogram(const TimeSeries& series);

}  // namespace retint
