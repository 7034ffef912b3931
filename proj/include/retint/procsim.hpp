#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "retint/extremes.hpp"

namespace retint {

/// What happens when the step counter passes k_max without an acceptance.
/// ExtendHazard keeps applying the same power-law hazard beyond k_max
/// (k_max then only fixes the normalization constant); ForceAtKMax
/// registers a forced event at k_max, truncating the interval distribution.
/// With the normalization used here the cumulative hazard over [1, k_max]
/// is ~1, so roughly e^{-1} of all intervals run past k_max and forcing
/// distorts the distribution badly; ExtendHazard is the default.
enum class TailPolicy { extend_hazard, force_at_k_max };

/// Exponent convention for the per-step acceptance probability
///   P(k) = gamma / (k_max^gamma - 1) * k^exponent.
/// OneMinusGamma (exponent -(1-gamma)) matches the hazard model the
/// normalization constant is derived for; DisplayGamma (exponent -gamma)
/// is provided for comparison only.
enum class HazardExponent { one_minus_gamma, display_gamma };

struct ProcessConfig {
    double gamma = 0.5;                // in (0, 1)
    std::uint64_t k_max = 100000;      // >= 2, normalization horizon
    std::size_t n_events_target = 100000;  // >= 1000
    std::uint64_t seed = 0;
    TailPolicy tail_policy = TailPolicy::extend_hazard;
    HazardExponent exponent = HazardExponent::one_minus_gamma;
};

struct ProcessRun {
    EventSeries events;            // event at time 0 plus n_events_target more
    std::uint64_t forced_events = 0;  // only nonzero under ForceAtKMax
    bool clipped = false;          // true when P(k) had to be clipped to 1
    ProcessConfig config;
};

/// Per-step acceptance probability P(k), clipped to [0, 1];
/// k must lie in [1, k_max].
double hazard_pk(std::uint64_t k, const ProcessConfig& config);

/// Simulate the extreme-event process: starting from an event at time 0,
/// step k = 1, 2, ... since the last event and register an event with
/// probability P(k); the step counter resets after every event. Runs until
/// n_events_target events have been produced; deterministic under seed.
///
/// Sampling skips runs of rejected steps with geometric jumps under a
/// per-block majorant and thins to the exact P(k), which reproduces the
/// per-step chain's law without touching every k.
ProcessRun simulate_process(const ProcessConfig& config);

/// Lag-1 Pearson correlation of consecutive intervals.
double lag1_interval_correlation(const std::vector<std::uint64_t>& intervals);

}  // namespace retint
