#include "retint/procsim.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "retint/errors.hpp"

namespace retint {

namespace {

void validate(const ProcessConfig& config) {
    if (!(config.gamma > 0.0) || !(config.gamma < 1.0))
        throw ParameterError("procsim: gamma must be in (0, 1)");
    if (config.k_max < 2) throw ParameterError("procsim: k_max must be >= 2");
    if (config.n_events_target < 1000)
        throw ParameterError("procsim: n_events_target must be >= 1000");
}

double norm_constant(const ProcessConfig& config) {
    return config.gamma /
           (std::pow(static_cast<double>(config.k_max), config.gamma) - 1.0);
}

double step_exponent(const ProcessConfig& config) {
    return config.exponent == HazardExponent::one_minus_gamma ? config.gamma - 1.0
                                                              : -config.gamma;
}

// Unclipped, unchecked hazard; decreasing in k.
inline double raw_hazard(std::uint64_t k, double a, double expo) {
    return a * std::pow(static_cast<double>(k), expo);
}

// Strictly inside (0, 1): 53-bit draw shifted off the endpoints.
inline double draw_open(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

double hazard_pk(std::uint64_t k, const ProcessConfig& config) {
    validate(config);
    if (k < 1 || k > config.k_max)
        throw ParameterError("hazard_pk: k must be in [1, k_max]");
    const double p = raw_hazard(k, norm_constant(config), step_exponent(config));
    return std::min(p, 1.0);
}

ProcessRun simulate_process(const ProcessConfig& config) {
    validate(config);
    const double a = norm_constant(config);
    const double expo = step_exponent(config);
    const bool force = config.tail_policy == TailPolicy::force_at_k_max;

    ProcessRun run;
    run.config = config;
    run.clipped = a > 1.0;  // hazard decreases in k, so only the front clips

    std::mt19937_64 rng(config.seed);

    auto sample_interval = [&]() -> std::uint64_t {
        std::uint64_t k = 1;   // candidate step since the last event
        std::uint64_t block = 1;  // current majorant block [block, 2*block)
        for (;;) {
            if (force && k > config.k_max) {
                ++run.forced_events;
                return config.k_max;
            }
            while (k >= 2 * block) block <<= 1;
            std::uint64_t block_end = 2 * block;
            if (force && block_end > config.k_max + 1) block_end = config.k_max + 1;

            const double p_hat = std::min(raw_hazard(block, a, expo), 1.0);
            std::uint64_t jump;  // geometric trial count at rate p_hat
            if (p_hat >= 1.0) {
                jump = 1;
            } else {
                const double g =
                    std::floor(std::log(draw_open(rng)) / std::log1p(-p_hat));
                jump = g > 9.0e18 ? std::numeric_limits<std::uint64_t>::max() / 4
                                  : static_cast<std::uint64_t>(g) + 1;
            }
            if (jump > block_end - k) {
                // no acceptance of the majorant inside this block; the
                // geometric overshoot is memoryless, so redraw next block
                k = block_end;
                continue;
            }
            const std::uint64_t cand = k + jump - 1;
            const double pk = std::min(raw_hazard(cand, a, expo), 1.0);
            if (draw_open(rng) * p_hat < pk) return cand;
            k = cand + 1;
        }
    };

    run.events.length = 0;
    run.events.q = std::numeric_limits<double>::quiet_NaN();
    run.events.event_indices.reserve(config.n_events_target + 1);
    run.events.event_indices.push_back(0);
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < config.n_events_target; ++i) {
        t += sample_interval();
        run.events.event_indices.push_back(t);
    }
    run.events.length = t + 1;
    return run;
}

double lag1_interval_correlation(const std::vector<std::uint64_t>& intervals) {
    if (intervals.size() < 3)
        throw InsufficientDataError("lag1_interval_correlation: need >= 3 intervals",
                                    intervals.size());
    const std::size_t n = intervals.size();
    double mean = 0.0;
    for (auto r : intervals) mean += static_cast<double>(r);
    mean /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = static_cast<double>(intervals[i]) - mean;
        den += d * d;
        if (i + 1 < n)
            num += d * (static_cast<double>(intervals[i + 1]) - mean);
    }
    return num / den;
}

}  // namespace retint
