#include "retint/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "retint/errors.hpp"
#include "retint/extremes.hpp"

namespace retint {

double Histogram::center(std::size_t i) const {
    return std::sqrt(edges[i] * edges[i + 1]);
}

Histogram log_binned_histogram(std::span<const double> scaled, int bins_per_decade,
                               double mean_r) {
    if (bins_per_decade < 4 || bins_per_decade > 20)
        throw ParameterError("log_binned_histogram: bins_per_decade must be in [4, 20]");
    if (!(mean_r > 0.0)) throw ParameterError("log_binned_histogram: mean_r must be > 0");
    if (scaled.size() < 100) {
        std::ostringstream msg;
        msg << "log_binned_histogram: need >= 100 samples, got " << scaled.size();
        throw InsufficientDataError(msg.str(), scaled.size());
    }

    const double s0 = 1.0 / mean_r;
    double top = 0.0;
    for (double x : scaled) {
        if (x < s0 * (1.0 - 1e-9))
            throw ParameterError("log_binned_histogram: sample below the support edge s0");
        top = std::max(top, x);
    }

    const double bpd = static_cast<double>(bins_per_decade);
    std::size_t n_bins =
        static_cast<std::size_t>(std::ceil(std::log10(top / s0) * bpd)) + 1;

    Histogram hist;
    hist.edges.resize(n_bins + 1);
    for (std::size_t i = 0; i <= n_bins; ++i)
        hist.edges[i] = s0 * std::pow(10.0, static_cast<double>(i) / bpd);
    hist.counts.assign(n_bins, 0);
    hist.n_total = scaled.size();

    for (double x : scaled) {
        auto i = static_cast<std::ptrdiff_t>(std::floor(std::log10(x / s0) * bpd));
        i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n_bins) - 1);
        // log10 round-off can land a sample one bin off the half-open edges
        if (x < hist.edges[i] && i > 0) --i;
        if (i + 1 < static_cast<std::ptrdiff_t>(n_bins) && x >= hist.edges[i + 1]) ++i;
        ++hist.counts[static_cast<std::size_t>(i)];
    }

    while (!hist.counts.empty() && hist.counts.back() == 0) {
        hist.counts.pop_back();
        hist.edges.pop_back();
    }

    hist.density.resize(hist.counts.size());
    for (std::size_t i = 0; i < hist.counts.size(); ++i) {
        const double width = hist.edges[i + 1] - hist.edges[i];
        hist.density[i] = static_cast<double>(hist.counts[i]) /
                          (static_cast<double>(hist.n_total) * width);
    }
    return hist;
}

SlopeEstimate fit_powerlaw_slope(const Histogram& hist, double fit_lo, double fit_hi,
                                 double q, double gamma) {
    if (!(fit_hi <= 1.0))
        throw ParameterError("fit_powerlaw_slope: fit window must end at R <= 1");
    if (!(fit_lo > 0.0) || !(fit_lo < fit_hi))
        throw ParameterError("fit_powerlaw_slope: invalid fit window");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < hist.bins(); ++i) {
        if (hist.counts[i] == 0) continue;
        const double c = hist.center(i);
        if (c < fit_lo || c > fit_hi) continue;
        const double x = std::log(c);
        const double y = std::log(hist.density[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    if (used < 5) {
        std::ostringstream msg;
        msg << "fit_powerlaw_slope: need >= 5 nonempty bins in window, got " << used;
        throw EstimationError(msg.str(), used);
    }
    const double n = static_cast<double>(used);
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < hist.bins(); ++i) {
        if (hist.counts[i] == 0) continue;
        const double c = hist.center(i);
        if (c < fit_lo || c > fit_hi) continue;
        const double r = std::log(hist.density[i]) - (slope * std::log(c) + intercept);
        ss_res += r * r;
    }
    SlopeEstimate est;
    est.s_m = slope;
    est.stderr_s = std::sqrt(ss_res / (used > 2 ? n - 2.0 : 1.0) / (sxx - sx * sx / n));
    est.fit_lo = fit_lo;
    est.fit_hi = fit_hi;
    est.n_bins = used;
    est.q = q;
    est.gamma = gamma;
    return est;
}

std::vector<SweepPoint> sweep_threshold(const TimeSeries& series,
                                        const std::vector<double>& q_grid,
                                        const SweepConfig& config) {
    for (std::size_t i = 1; i < q_grid.size(); ++i)
        if (!(q_grid[i] > q_grid[i - 1]))
            throw ParameterError("sweep_threshold: q_grid must be strictly increasing");

    std::vector<SweepPoint> points(q_grid.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= q_grid.size()) return;
            SweepPoint& pt = points[i];
            pt.q = q_grid[i];
            try {
                const IntervalSeries iv =
                    return_intervals(binarize(series, pt.q), series.gamma_target);
                pt.n_intervals = iv.intervals.size();
                pt.mean_r = iv.mean_r;
                if (pt.n_intervals < config.min_intervals) continue;
                const std::vector<double> scaled = scale_intervals(iv);
                const Histogram hist =
                    log_binned_histogram(scaled, config.bins_per_decade, iv.mean_r);
                const double s0 = 1.0 / iv.mean_r;
                pt.estimate = fit_powerlaw_slope(hist, config.fit_lo_mult * s0,
                                                 config.fit_hi, pt.q,
                                                 series.gamma_target);
            } catch (const InsufficientDataError&) {
                pt.estimate.reset();  // missing point, not fatal
            }
        }
    };

    const unsigned jobs = std::max(1u, config.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return points;
}

namespace {

template <class Cdf>
double ks_statistic(std::span<const double> scaled, Cdf&& cdf) {
    if (scaled.size() < 100) {
        std::ostringstream msg;
        msg << "ks_distance: need >= 100 samples, got " << scaled.size();
        throw InsufficientDataError(msg.str(), scaled.size());
    }
    std::vector<double> sorted(scaled.begin(), scaled.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double F = cdf(sorted[i]);
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - F));
        d = std::max(d, std::abs(static_cast<double>(i) / n - F));
    }
    return d;
}

}  // namespace

double ks_distance(std::span<const double> scaled, const TheoryParams& params) {
    return ks_statistic(scaled, [&](double r) { return cdf_cutoff(r, params); });
}

double ks_distance_exponential(std::span<const double> scaled) {
    return ks_statistic(scaled, [](double r) { return -std::expm1(-r); });
}

}  // namespace retint
