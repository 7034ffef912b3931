#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "retint/timeseries.hpp"

namespace retint {

/// Positions of threshold exceedances x(t) >= q in a series of known
/// length; indices are strictly increasing. May be empty for large q.
struct EventSeries {
    std::size_t length = 0;  // length of the source series
    double q = 0.0;          // threshold, units of the series std dev
    std::vector<std::uint64_t> event_indices;
};

/// Return intervals between successive events, with their mean. Intervals
/// are start-to-start: consecutive exceedances one step apart give r = 1.
struct IntervalSeries {
    std::vector<std::uint64_t> intervals;
    double mean_r = 0.0;
    double q = 0.0;
    double gamma_target = 1.0;
};

/// Mark every t with x(t) >= q as an extreme event. An empty result is
/// valid; downstream interval extraction rejects it.
EventSeries binarize(const TimeSeries& series, double q);

/// Differences of successive event positions. Throws
/// InsufficientDataError (carrying the event count) for fewer than 2 events.
IntervalSeries return_intervals(const EventSeries& events, double gamma_target = 1.0);

/// Scaled intervals R_k = r_k / mean_r; the smallest possible value is
/// 1/mean_r, and the scaled mean is 1 to round-off.
std::vector<double> scale_intervals(const IntervalSeries& intervals);

}  // namespace retint
