#include "retint/generator.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <random>
#include <sstream>

#include "retint/errors.hpp"

namespace retint {

namespace {

// FFTW plan creation/destruction is not thread safe; execution is.
std::mutex g_fftw_mutex;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

struct FftwBuffer {
    double* real = nullptr;
    fftw_complex* cplx = nullptr;
    std::size_t n;
    explicit FftwBuffer(std::size_t n) : n(n) {
        real = fftw_alloc_real(n);
        cplx = fftw_alloc_complex(n / 2 + 1);
        if (!real || !cplx) throw std::bad_alloc();
    }
    ~FftwBuffer() {
        fftw_free(real);
        fftw_free(cplx);
    }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};

void forward_r2c(FftwBuffer& buf) {
    std::unique_lock lock(g_fftw_mutex);
    fftw_plan plan =
        fftw_plan_dft_r2c_1d(static_cast<int>(buf.n), buf.real, buf.cplx, FFTW_ESTIMATE);
    lock.unlock();
    fftw_execute(plan);
    lock.lock();
    fftw_destroy_plan(plan);
}

void backward_c2r(FftwBuffer& buf) {
    std::unique_lock lock(g_fftw_mutex);
    fftw_plan plan =
        fftw_plan_dft_c2r_1d(static_cast<int>(buf.n), buf.cplx, buf.real, FFTW_ESTIMATE);
    lock.unlock();
    fftw_execute(plan);
    lock.lock();
    fftw_destroy_plan(plan);
}

// Neumaier compensated sum.
double stable_sum(const std::vector<double>& v) {
    double sum = 0.0, comp = 0.0;
    for (double x : v) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

void standardize(std::vector<double>& v) {
    const std::size_t n = v.size();
    const double mean = stable_sum(v) / static_cast<double>(n);
    for (double& x : v) x -= mean;
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = v[i] * v[i];
    const double var = stable_sum(sq) / static_cast<double>(n);
    const double inv_sd = 1.0 / std::sqrt(var);
    for (double& x : v) x *= inv_sd;
}

std::vector<double> gaussian_draws(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> u(n);
    for (double& x : u) x = normal(rng);
    return u;
}

void require_length(std::size_t n, const char* who) {
    if (n < (1u << 10) || !is_power_of_two(n)) {
        std::ostringstream msg;
        msg << who << ": n must be a power of two >= 2^10, got " << n;
        throw ParameterError(msg.str());
    }
}

}  // namespace

TimeSeries generate_lrc_gaussian(std::size_t n, double gamma, std::uint64_t seed) {
    require_length(n, "generate_lrc_gaussian");
    if (!(gamma > 0.0) || !(gamma < 1.0)) {
        std::ostringstream msg;
        msg << "generate_lrc_gaussian: gamma must be in (0, 1), got " << gamma;
        throw ParameterError(msg.str());
    }

    FftwBuffer buf(n);
    {
        const std::vector<double> u = gaussian_draws(n, seed);
        for (std::size_t i = 0; i < n; ++i) buf.real[i] = u[i];
    }
    forward_r2c(buf);

    // Shape the spectrum to S(f) ~ f^{-beta}, beta = 1 - gamma; the filter
    // applies sqrt(S). The DC weight is zeroed (the series is recentered
    // to zero mean afterwards anyway).
    const double beta = 1.0 - gamma;
    buf.cplx[0][0] = 0.0;
    buf.cplx[0][1] = 0.0;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        const double f = static_cast<double>(k) / static_cast<double>(n);
        const double w = std::pow(f, -0.5 * beta);
        buf.cplx[k][0] *= w;
        buf.cplx[k][1] *= w;
    }
    backward_c2r(buf);

    TimeSeries out;
    out.values.assign(buf.real, buf.real + n);
    standardize(out.values);
    out.gamma_target = gamma;
    out.seed = seed;
    out.kind = SeriesKind::fourier_filtered;
    return out;
}

TimeSeries generate_iid_gaussian(std::size_t n, std::uint64_t seed) {
    require_length(n, "generate_iid_gaussian");
    TimeSeries out;
    out.values = gaussian_draws(n, seed);
    standardize(out.values);
    out.gamma_target = 1.0;
    out.seed = seed;
    out.kind = SeriesKind::iid_gaussian;
    return out;
}

AcfEstimate estimate_autocorrelation(const TimeSeries& series, std::size_t max_lag,
                                     std::pair<std::size_t, std::size_t> fit_range) {
    const std::size_t n = series.n();
    if (n == 0) throw ParameterError("estimate_autocorrelation: empty series");
    if (max_lag == 0 || max_lag >= n / 4)
        throw ParameterError("estimate_autocorrelation: require 0 < max_lag < n/4");
    const auto [lo, hi] = fit_range;
    if (lo < 1 || hi > max_lag || lo >= hi || hi - lo + 1 < 10)
        throw ParameterError(
            "estimate_autocorrelation: fit_range must lie in [1, max_lag] with >= 10 lags");

    // Linear autocovariance via zero-padded FFT; biased 1/n normalization.
    const std::size_t m = 2 * n;
    FftwBuffer buf(m);
    for (std::size_t i = 0; i < n; ++i) buf.real[i] = series.values[i];
    for (std::size_t i = n; i < m; ++i) buf.real[i] = 0.0;
    forward_r2c(buf);
    for (std::size_t k = 0; k <= m / 2; ++k) {
        const double re = buf.cplx[k][0], im = buf.cplx[k][1];
        buf.cplx[k][0] = re * re + im * im;
        buf.cplx[k][1] = 0.0;
    }
    backward_c2r(buf);
    const double c0 = buf.real[0];

    AcfEstimate est;
    est.lags.resize(max_lag);
    est.acf.resize(max_lag);
    for (std::size_t tau = 1; tau <= max_lag; ++tau) {
        est.lags[tau - 1] = tau;
        est.acf[tau - 1] = buf.real[tau] / c0;
    }
    est.fit_range = fit_range;

    // Least squares of log C(tau) on log tau, restricted to positive ACF.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t used = 0;
    for (std::size_t tau = lo; tau <= hi; ++tau) {
        const double c = est.acf[tau - 1];
        if (!(c > 0.0)) continue;
        const double x = std::log(static_cast<double>(tau));
        const double y = std::log(c);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    est.usable_points = used;
    const std::size_t span = hi - lo + 1;
    if (used < 10 || used * 5 < span * 3) {
        std::ostringstream msg;
        msg << "estimate_autocorrelation: no power-law range, only " << used
            << " of " << span << " lags have positive ACF";
        throw EstimationError(msg.str(), used);
    }
    const double denom = used * sxx - sx * sx;
    const double slope = (used * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / used;

    double ss_res = 0.0;
    for (std::size_t tau = lo; tau <= hi; ++tau) {
        const double c = est.acf[tau - 1];
        if (!(c > 0.0)) continue;
        const double x = std::log(static_cast<double>(tau));
        const double r = std::log(c) - (slope * x + intercept);
        ss_res += r * r;
    }
    const double var_slope =
        ss_res / static_cast<double>(used > 2 ? used - 2 : 1) /
        (sxx - sx * sx / used);

    est.fitted_gamma = -slope;
    est.stderr_gamma = std::sqrt(var_slope);
    return est;
}

std::vector<double> periodogram(const TimeSeries& series) {
    const std::size_t n = series.n();
    if (n < 2) throw ParameterError("periodogram: series too short");
    FftwBuffer buf(n);
    for (std::size_t i = 0; i < n; ++i) buf.real[i] = series.values[i];
    forward_r2c(buf);
    std::vector<double> power(n / 2);
    for (std::size_t k = 1; k <= n / 2; ++k) {
        const double re = buf.cplx[k][0], im = buf.cplx[k][1];
        power[k - 1] = (re * re + im * im) / static_cast<double>(n);
    }
    return power;
}

}  // namespace retint
