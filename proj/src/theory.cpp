#include "retint/theory.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "retint/roots.hpp"

namespace retint {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min() / kEps;

void require_gamma_closed(double gamma, const char* who) {
    if (!(gamma > 0.0) || !(gamma <= 1.0)) {
        std::ostringstream msg;
        msg << who << ": gamma must be in (0, 1], got " << gamma;
        throw ParameterError(msg.str());
    }
}

// Regularized lower incomplete gamma P(s, x) by power series; valid and
// fast for x < s + 1.
double lower_regularized_series(double s, double x) {
    if (x == 0.0) return 0.0;
    double ap = s;
    double del = 1.0 / s;
    double sum = del;
    for (int i = 0; i < 10000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Continued-fraction factor h with Gamma(s, x) = exp(-x + s ln x) * h,
// evaluated by modified Lentz; valid for x >= s + 1.
double upper_cf_factor(double s, double x) {
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) <= kEps) break;
    }
    return h;
}

void require_incgamma_domain(double s, double x) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw ParameterError("incomplete gamma: s must be positive and finite");
    if (!(x >= 0.0) || !std::isfinite(x))
        throw ParameterError("incomplete gamma: x must be >= 0 and finite");
}

}  // namespace

GammaConstant g_gamma(double gamma) {
    require_gamma_closed(gamma, "g_gamma");
    const double g = std::exp(gamma * std::lgamma((1.0 + gamma) / gamma));
    return {gamma, g};
}

double pdf_uncorrelated(double R) {
    if (!(R >= 0.0)) throw ParameterError("pdf_uncorrelated: R must be >= 0");
    return std::exp(-R);
}

double pdf_stretched(double R, double gamma, double A_c, double B_c) {
    require_gamma_closed(gamma, "pdf_stretched");
    if (!(R >= 0.0)) throw ParameterError("pdf_stretched: R must be >= 0");
    if (!(A_c > 0.0) || !(B_c > 0.0))
        throw ParameterError("pdf_stretched: A_c and B_c must be positive");
    return A_c * std::exp(-B_c * std::pow(R, gamma));
}

std::pair<double, double> normalized_stretched_constants(double gamma) {
    require_gamma_closed(gamma, "normalized_stretched_constants");
    // int_0^inf e^{-B R^g} dR = Gamma(1+1/g) B^{-1/g} and
    // int_0^inf R e^{-B R^g} dR = Gamma(2/g) / (g B^{2/g});
    // demanding A * (first) = 1 and A * (second) = 1 gives:
    const double log_b_pow = std::lgamma(2.0 / gamma) - std::log(gamma) -
                             std::lgamma(1.0 + 1.0 / gamma);
    const double B = std::exp(gamma * log_b_pow);           // B^{1/g} = e^{log_b_pow}
    const double A = std::exp(log_b_pow - std::lgamma(1.0 + 1.0 / gamma));
    return {A, B};
}

double pdf_normalized(double R, double gamma) {
    require_gamma_closed(gamma, "pdf_normalized");
    if (!(R > 0.0)) throw ParameterError("pdf_normalized: R must be > 0");
    const double g = g_gamma(gamma).g;
    return gamma * g * std::pow(R, gamma - 1.0) * std::exp(-g * std::pow(R, gamma));
}

double upper_incomplete_gamma(double s, double x) {
    require_incgamma_domain(s, x);
    const double full = std::tgamma(s);
    if (!std::isfinite(full))
        throw ParameterError("upper_incomplete_gamma: Gamma(s) overflows");
    if (x == 0.0) return full;
    if (x < s + 1.0) return full * (1.0 - lower_regularized_series(s, x));
    return std::exp(-x + s * std::log(x)) * upper_cf_factor(s, x);
}

double log_upper_incomplete_gamma(double s, double x) {
    require_incgamma_domain(s, x);
    if (x == 0.0) return std::lgamma(s);
    if (x < s + 1.0) {
        const double P = lower_regularized_series(s, x);
        return std::lgamma(s) + std::log1p(-P);
    }
    return -x + s * std::log(x) + std::log(upper_cf_factor(s, x));
}

TheoryParams solve_constants(double gamma, double mean_r) {
    require_gamma_closed(gamma, "solve_constants");
    if (!(mean_r > 1.0) || !std::isfinite(mean_r))
        throw ParameterError("solve_constants: mean_r must be > 1");

    const double s0 = 1.0 / mean_r;
    const double s = 1.0 / gamma;
    const double target = std::log(mean_r - 1.0);  // log((1-s0)/s0)

    // log of (RHS - 1) of the normalization equation, strictly decreasing
    // in p from +inf toward -inf.
    auto logh = [&](double p) {
        return p + log_upper_incomplete_gamma(s, p) - std::log(gamma) -
               s * std::log(p);
    };
    auto f = [&](double p) { return logh(p) - target; };

    double lo = 1e-12, hi = 1.0;
    while (f(lo) < 0.0 && lo > 1e-290) lo *= 1e-4;
    int expansions = 0;
    while (f(hi) > 0.0) {
        hi *= 2.0;
        if (++expansions > 1200) break;
    }
    if (!(f(lo) > 0.0) || !(f(hi) < 0.0)) {
        std::ostringstream msg;
        msg << "solve_constants: no sign change for gamma=" << gamma
            << ", mean_r=" << mean_r << " in bracket [" << lo << ", " << hi << "]";
        throw SolverError(msg.str());
    }

    const double p0 = find_root_brent(f, lo, hi, 1e-15);
    const double A = gamma * p0 * std::exp(-gamma * std::log(s0));
    const double B = A * std::exp(p0);

    const double residual = std::abs(s0 * (1.0 + std::exp(logh(p0))) - 1.0);
    if (!(residual < 1e-12)) {
        std::ostringstream msg;
        msg << "solve_constants: residual " << residual
            << " exceeds tolerance at p0=" << p0;
        throw SolverError(msg.str());
    }
    return {gamma, mean_r, s0, p0, A, B};
}

double pdf_cutoff(double r, const TheoryParams& params) {
    if (!(r >= params.s0 * (1.0 - 1e-12)))
        throw ParameterError("pdf_cutoff: r below the support edge s0");
    return params.B * std::pow(r, params.gamma - 1.0) *
           std::exp(-(params.A / params.gamma) * std::pow(r, params.gamma));
}

double cdf_cutoff(double r, const TheoryParams& params) {
    if (r <= params.s0) return 0.0;
    const double z =
        params.p0 - (params.A / params.gamma) * std::pow(r, params.gamma);
    return 1.0 - std::exp(z);
}

double asymptote_small_R(double gamma) {
    require_gamma_closed(gamma, "asymptote_small_R");
    return -(1.0 - gamma);
}

std::pair<double, double> asymptote_large_R(double gamma) {
    require_gamma_closed(gamma, "asymptote_large_R");
    return {g_gamma(gamma).g, gamma};
}

double harmonic_limit_check(double gamma, std::size_t m) {
    if (!(gamma > 0.0) || !(gamma < 1.0))
        throw ParameterError("harmonic_limit_check: gamma must be in (0, 1)");
    if (m < 10) throw ParameterError("harmonic_limit_check: m must be >= 10");
    // Neumaier compensated summation; terms grow like j^{gamma-1} <= 1.
    double sum = 0.0, comp = 0.0;
    for (std::size_t j = 1; j < m; ++j) {
        const double term = std::pow(static_cast<double>(j), gamma - 1.0);
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    }
    return (sum + comp) / std::pow(static_cast<double>(m), gamma);
}

}  // namespace retint
