#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "retint/errors.hpp"

namespace retint {

// Adaptive Gauss-Kronrod 7/15 quadrature. Error estimate per panel is
// |K15 - G7|; panels are bisected until the estimate falls below the
// proportional share of the requested absolute tolerance.
namespace detail {

inline constexpr double kGK15Nodes[8] = {
    0.0000000000000000, 0.2077849550078985, 0.4058451513773972,
    0.5860872354676911, 0.7415311855993944, 0.8648644233597691,
    0.9491079123427585, 0.9914553711208126};
inline constexpr double kGK15Weights[8] = {
    0.2094821410847278, 0.2044329400752989, 0.1903505780647854,
    0.1690047266392679, 0.1406532597155259, 0.1047900103222502,
    0.0630920926299785, 0.0229353220105292};
// Gauss-7 weights attach to Kronrod nodes 0, 2, 4, 6.
inline constexpr double kG7Weights[4] = {
    0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
    0.1294849661688697};

template <class F>
std::pair<double, double> gk15_panel(F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double kronrod = kGK15Weights[0] * f0;
    double gauss = kG7Weights[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGK15Nodes[i];
        const double fs = f(mid - dx) + f(mid + dx);
        kronrod += kGK15Weights[i] * fs;
        if (i % 2 == 0) gauss += kG7Weights[i / 2] * fs;
    }
    kronrod *= half;
    gauss *= half;
    return {kronrod, std::abs(kronrod - gauss)};
}

template <class F>
double integrate_rec(F& f, double a, double b, double tol, int depth) {
    auto [value, err] = gk15_panel(f, a, b);
    // The relative floor stops subdivision once the error estimate is
    // round-off noise; without it the halved tolerances drop below machine
    // precision and the recursion tree explodes.
    const double floor =
        32.0 * std::numeric_limits<double>::epsilon() * std::abs(value);
    if (err <= tol || err <= floor || depth <= 0) return value;
    const double mid = 0.5 * (a + b);
    return integrate_rec(f, a, mid, 0.5 * tol, depth - 1) +
           integrate_rec(f, mid, b, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-11,
                 int max_depth = 48) {
    if (!(a <= b)) throw ParameterError("integrate: a must be <= b");
    if (a == b) return 0.0;
    return detail::integrate_rec(f, a, b, abs_tol, max_depth);
}

// Integral over [a, inf) via the substitution x = a + t/(1-t), t in (0,1).
// The integrand must decay at infinity.
template <class F>
double integrate_to_inf(F&& f, double a, double abs_tol = 1e-11,
                        int max_depth = 48) {
    auto g = [&f, a](double t) {
        const double om = 1.0 - t;
        const double x = a + t / om;
        if (!std::isfinite(x)) return 0.0;
        const double v = f(x) / (om * om);
        return std::isfinite(v) ? v : 0.0;
    };
    return detail::integrate_rec(g, 0.0, 1.0, abs_tol, max_depth);
}

}  // namespace retint
