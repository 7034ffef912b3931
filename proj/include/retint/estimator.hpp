#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "retint/theory.hpp"
#include "retint/timeseries.hpp"

namespace retint {

/// Log-binned empirical density. Edges start at s0 = 1/mean_r; bin i
/// covers [edges[i], edges[i+1]) and density_i = counts_i /
/// (n_total * width_i), so the density integrates to one exactly.
struct Histogram {
    std::vector<double> edges;          // size = bins + 1
    std::vector<double> density;
    std::vector<std::uint64_t> counts;
    std::uint64_t n_total = 0;

    std::size_t bins() const { return counts.size(); }
    double center(std::size_t i) const;  // geometric bin center
};

/// Least-squares slope of log density against log bin center over a
/// fit window, with the threshold-correction factor theta derived from it.
struct SlopeEstimate {
    double s_m = 0.0;
    double stderr_s = 0.0;
    double fit_lo = 0.0;   // window in scaled units, fit_hi <= 1
    double fit_hi = 0.0;
    std::size_t n_bins = 0;
    double q = 0.0;
    double gamma = 1.0;

    /// theta(q, gamma) = s_m / (gamma - 1); NaN at gamma = 1.
    double theta() const { return s_m / (gamma - 1.0); }
};

Histogram log_binned_histogram(std::span<const double> scaled, int bins_per_decade,
                               double mean_r);

/// Requires at least 5 nonempty bins with centers inside [fit_lo, fit_hi]
/// (fit_hi <= 1); q and gamma are carried through for context.
SlopeEstimate fit_powerlaw_slope(const Histogram& hist, double fit_lo, double fit_hi,
                                 double q = 0.0, double gamma = 1.0);

struct SweepConfig {
    int bins_per_decade = 10;
    double fit_lo_mult = 3.0;   // lower window edge, units of s0
    double fit_hi = 0.3;        // upper window edge, scaled units
    std::size_t min_intervals = 100;
    unsigned jobs = 1;
};

/// One threshold of a sweep; estimate is absent when the threshold yields
/// too few intervals or too few usable bins (missing point, not an error).
struct SweepPoint {
    double q = 0.0;
    std::size_t n_intervals = 0;
    double mean_r = 0.0;
    std::optional<SlopeEstimate> estimate;
};

/// Threshold sweep for the slope-vs-q analysis. Points are independent and
/// run on up to config.jobs threads; results are ordered by q.
std::vector<SweepPoint> sweep_threshold(const TimeSeries& series,
                                        const std::vector<double>& q_grid,
                                        const SweepConfig& config = {});

/// Kolmogorov-Smirnov distance between the empirical CDF of the scaled
/// intervals and the cutoff-distribution CDF.
double ks_distance(std::span<const double> scaled, const TheoryParams& params);

/// KS distance against the exponential CDF 1 - e^{-R} (uncorrelated
/// baseline).
double ks_distance_exponential(std::span<const double> scaled);

}  // namespace retint
