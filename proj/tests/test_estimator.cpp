#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "retint/errors.hpp"
#include "retint/estimator.hpp"
#include "retint/extremes.hpp"
#include "retint/generator.hpp"
#include "retint/theory.hpp"

using namespace retint;

namespace {

// Deterministic Exp(1) samples by inverse CDF.
std::vector<double> exp_samples(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> out(n);
    for (double& x : out) {
        const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
        x = -std::log(u);
    }
    return out;
}

// Inverse-CDF sampler of the cutoff distribution.
std::vector<double> cutoff_samples(const TheoryParams& params, std::size_t n,
                                   std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> out(n);
    for (double& x : out) {
        const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
        x = std::pow((params.gamma / params.A) * (params.p0 - std::log1p(-u)),
                     1.0 / params.gamma);
    }
    return out;
}

double mass(const Histogram& h) {
    double total = 0.0;
    for (std::size_t i = 0; i < h.bins(); ++i)
        total += h.density[i] * (h.edges[i + 1] - h.edges[i]);
    return total;
}

}  // namespace

TEST_CASE("histogram of exponential samples tracks e^-R within Poisson bands") {
    const std::size_t n = 100000;
    std::vector<double> samples = exp_samples(n, 31);
    double lo = samples[0];
    for (double x : samples) lo = std::min(lo, x);
    const double mean_r = 1.0 / lo;  // support edge at the smallest sample

    const Histogram h = log_binned_histogram(samples, 10, mean_r);
    CHECK(std::abs(mass(h) - 1.0) < 1e-9);
    CHECK(h.n_total == n);

    std::uint64_t total = 0;
    int outliers = 0;
    for (std::size_t i = 0; i < h.bins(); ++i) {
        total += h.counts[i];
        const double expected =
            n * (std::exp(-h.edges[i]) - std::exp(-h.edges[i + 1]));
        if (expected < 10.0) continue;
        if (std::abs(static_cast<double>(h.counts[i]) - expected) >
            3.0 * std::sqrt(expected))
            ++outliers;
    }
    CHECK(total == n);
    CHECK(outliers <= 1);  // ~70 bins at 3 sigma; the seed is fixed
}

TEST_CASE("histogram edge cases") {
    std::vector<double> equal(500, 2.0);
    const Histogram h = log_binned_histogram(equal, 10, 1.0);
    std::size_t occupied = 0;
    for (auto c : h.counts)
        if (c > 0) ++occupied;
    CHECK(occupied == 1);
    CHECK(std::abs(mass(h) - 1.0) < 1e-12);
    CHECK(h.counts.back() > 0);  // trailing empties are trimmed

    std::vector<double> few(99, 1.0);
    CHECK_THROWS_AS(log_binned_histogram(few, 10, 1.0), InsufficientDataError);
    CHECK_THROWS_AS(log_binned_histogram(equal, 3, 1.0), ParameterError);
    CHECK_THROWS_AS(log_binned_histogram(equal, 21, 1.0), ParameterError);
}

TEST_CASE("slope fit is exact on a pure power law") {
    Histogram h;
    const int bins = 30;
    h.edges.resize(bins + 1);
    for (int i = 0; i <= bins; ++i)
        h.edges[i] = 1e-3 * std::pow(10.0, i / 10.0);
    h.counts.assign(bins, 1000);
    h.n_total = 1000 * bins;
    h.density.resize(bins);
    for (int i = 0; i < bins; ++i) h.density[i] = 0.37 * std::pow(h.center(i), -0.9);

    const SlopeEstimate est = fit_powerlaw_slope(h, 1e-3, 1.0, 3.0, 0.1);
    CHECK(std::abs(est.s_m - (-0.9)) < 1e-6);
    CHECK(est.stderr_s < 1e-6);
    CHECK(est.theta() == doctest::Approx(-0.9 / (0.1 - 1.0)).epsilon(1e-12));

    CHECK_THROWS_AS(fit_powerlaw_slope(h, 1e-3, 2.0), ParameterError);
    CHECK_THROWS_AS(fit_powerlaw_slope(h, 0.5, 0.9), EstimationError);  // < 5 bins
}

TEST_CASE("iid pipeline has a flat small-R histogram") {
    // q = 3 keeps mean_r large enough that the bins in the fit window hold
    // many integer interval values; at small mean_r the single-atom bins
    // fake a power law.
    const TimeSeries s = generate_iid_gaussian(std::size_t{1} << 23, 6);
    const IntervalSeries iv = return_intervals(binarize(s, 3.0));
    const std::vector<double> scaled = scale_intervals(iv);
    const Histogram h = log_binned_histogram(scaled, 10, iv.mean_r);
    const SlopeEstimate est = fit_powerlaw_slope(h, 0.05, 0.5, 3.0, 1.0);
    CHECK(std::abs(est.s_m) < 0.25);  // e^-R is nearly flat below R ~ 0.5
}

TEST_CASE("threshold sweep marks starved points as missing") {
    const TimeSeries s = generate_lrc_gaussian(1 << 18, 0.5, 17);
    SweepConfig cfg;
    cfg.fit_lo_mult = 1.0;
    cfg.fit_hi = 1.0;
    const std::vector<double> grid = {1.0, 2.0, 8.0};
    const auto points = sweep_threshold(s, grid, cfg);
    REQUIRE(points.size() == 3);
    CHECK(points[0].estimate.has_value());
    CHECK(points[1].estimate.has_value());
    CHECK_FALSE(points[2].estimate.has_value());  // q above the series maximum
    CHECK(points[2].n_intervals == 0);
    CHECK(points[0].q == 1.0);
    CHECK(points[1].mean_r > points[0].mean_r);

    CHECK_THROWS_AS(sweep_threshold(s, {2.0, 1.0}, cfg), ParameterError);
}

TEST_CASE("sweep results are independent of the thread count") {
    const TimeSeries s = generate_lrc_gaussian(1 << 18, 0.3, 23);
    SweepConfig serial;
    serial.fit_lo_mult = 1.0;
    serial.fit_hi = 1.0;
    SweepConfig parallel = serial;
    parallel.jobs = 4;
    const std::vector<double> grid = {0.5, 1.0, 1.5, 2.0, 2.5};
    const auto a = sweep_threshold(s, grid, serial);
    const auto b = sweep_threshold(s, grid, parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].q == b[i].q);
        CHECK(a[i].n_intervals == b[i].n_intervals);
        CHECK(a[i].estimate.has_value() == b[i].estimate.has_value());
        if (a[i].estimate) {
            CHECK(a[i].estimate->s_m == b[i].estimate->s_m);
            CHECK(a[i].estimate->stderr_s == b[i].estimate->stderr_s);
        }
    }
}

TEST_CASE("KS distance against the cutoff distribution") {
    const TheoryParams params = solve_constants(0.5, 743.0);

    // samples drawn from the distribution itself
    const std::vector<double> own = cutoff_samples(params, 100000, 3);
    CHECK(ks_distance(own, params) < 0.01);

    // quantile-placed samples: the empirical CDF rides the theory curve
    std::vector<double> quantiles(10000);
    for (std::size_t i = 0; i < quantiles.size(); ++i) {
        const double u = (static_cast<double>(i) + 0.5) / quantiles.size();
        quantiles[i] = std::pow(
            (params.gamma / params.A) * (params.p0 - std::log1p(-u)),
            1.0 / params.gamma);
    }
    CHECK(ks_distance(quantiles, params) < 1e-4);

    // gross mismatch: exponential samples against gamma=0.3 theory
    const TheoryParams wrong = solve_constants(0.3, 743.0);
    CHECK(ks_distance(exp_samples(20000, 5), wrong) > 0.1);

    std::vector<double> few(50, 1.0);
    CHECK_THROWS_AS(ks_distance(few, params), InsufficientDataError);
}
