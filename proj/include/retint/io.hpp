#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "retint/estimator.hpp"
#include "retint/extremes.hpp"
#include "retint/theory.hpp"
#include "retint/timeseries.hpp"

namespace retint::io {

enum class SeriesFormat { binary, csv };

/// Writes the series (raw little-endian doubles, or single-column CSV with
/// header "value") plus a metadata sidecar at <path>.json holding
/// {n, gamma, seed, kind}.
void write_series(const std::filesystem::path& path, const TimeSeries& series,
                  SeriesFormat format);

/// Reads a series written by write_series; the format is taken from the
/// file extension (.csv reads as CSV, anything else as binary) and the
/// metadata from the <path>.json sidecar.
TimeSeries read_series(const std::filesystem::path& path);

/// CSV with columns r,R (raw and scaled interval per row).
void write_intervals(const std::filesystem::path& path, const IntervalSeries& intervals);

/// Reads the r column of an interval CSV and rebuilds the series; q and
/// gamma_target are supplied by the caller (typically from the summary).
IntervalSeries read_intervals(const std::filesystem::path& path, double q,
                              double gamma_target);

struct IntervalSummary {
    double q = 0.0;
    std::size_t n_events = 0;
    std::size_t n_intervals = 0;
    double mean_r = 0.0;
    double gamma_target = 1.0;
};

void write_interval_summary(const std::filesystem::path& path,
                            const IntervalSummary& summary);
IntervalSummary read_interval_summary(const std::filesystem::path& path);

/// JSON object {gamma, mean_r, s0, p0, A, B}.
void write_theory_params(const std::filesystem::path& path, const TheoryParams& params);
TheoryParams read_theory_params(const std::filesystem::path& path);

/// CSV (R, pdf_normalized, pdf_cutoff) on a log-spaced grid from s0 to
/// r_max with the given resolution.
void write_theory_curve(const std::filesystem::path& path, const TheoryParams& params,
                        int points_per_decade, double r_max);

/// CSV (R, density_empirical, density_theory_cutoff, density_theory_normalized)
/// with one row per nonempty histogram bin, theory evaluated at bin centers.
void write_fit_table(const std::filesystem::path& path, const Histogram& hist,
                     const TheoryParams& params);

/// CSV (q, s_m, stderr, theta, gamma); missing sweep points leave the
/// estimate columns empty.
void write_sweep_table(const std::filesystem::path& path,
                       const std::vector<SweepPoint>& points, double gamma);

}  // namespace retint::io
