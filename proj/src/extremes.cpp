#include "retint/extremes.hpp"

#include <cmath>
#include <sstream>

#include "retint/errors.hpp"

namespace retint {

EventSeries binarize(const TimeSeries& series, double q) {
    if (series.n() == 0) throw ParameterError("binarize: empty series");
    if (!std::isfinite(q)) throw ParameterError("binarize: q must be finite");
    EventSeries events;
    events.length = series.n();
    events.q = q;
    for (std::size_t t = 0; t < series.n(); ++t) {
        if (series.values[t] >= q) events.event_indices.push_back(t);
    }
    return events;
}

IntervalSeries return_intervals(const EventSeries& events, double gamma_target) {
    const std::size_t n_events = events.event_indices.size();
    if (n_events < 2) {
        std::ostringstream msg;
        msg << "return_intervals: need at least 2 events at q=" << events.q
            << ", got " << n_events;
        throw InsufficientDataError(msg.str(), n_events);
    }
    IntervalSeries out;
    out.q = events.q;
    out.gamma_target = gamma_target;
    out.intervals.resize(n_events - 1);
    double sum = 0.0, comp = 0.0;
    for (std::size_t k = 0; k + 1 < n_events; ++k) {
        const std::uint64_t r = events.event_indices[k + 1] - events.event_indices[k];
        out.intervals[k] = r;
        const double x = static_cast<double>(r);
        const double t = sum + x;
        comp += (std::abs(sum) >= x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    out.mean_r = (sum + comp) / static_cast<double>(out.intervals.size());
    return out;
}

std::vector<double> scale_intervals(const IntervalSeries& intervals) {
    if (!(intervals.mean_r > 0.0))
        throw ParameterError("scale_intervals: mean_r must be positive");
    std::vector<double> scaled(intervals.intervals.size());
    const double inv = 1.0 / intervals.mean_r;
    for (std::size_t k = 0; k < scaled.size(); ++k)
        scaled[k] = static_cast<double>(intervals.intervals[k]) * inv;
    return scaled;
}

}  // namespace retint
