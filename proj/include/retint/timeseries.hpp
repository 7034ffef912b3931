#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "retint/errors.hpp"

namespace retint {

enum class SeriesKind { fourier_filtered, iid_gaussian };

inline std::string to_string(SeriesKind kind) {
    return kind == SeriesKind::fourier_filtered ? "fourier_filtered" : "iid_gaussian";
}

inline SeriesKind series_kind_from_string(const std::string& name) {
    if (name == "fourier_filtered") return SeriesKind::fourier_filtered;
    if (name == "iid_gaussian") return SeriesKind::iid_gaussian;
    throw ParameterError("unknown series kind: " + name);
}

/// Standardized (zero mean, unit variance) real-valued series of
/// power-of-two length, tagged with its generation parameters.
/// gamma_target is the prescribed autocorrelation exponent; the iid kind
/// records it as 1, the short-range crossover value.
struct TimeSeries {
    std::vector<double> values;
    double gamma_target = 1.0;
    std::uint64_t seed = 0;
    SeriesKind kind = SeriesKind::iid_gaussian;

    std::size_t n() const { return values.size(); }
};

}  // namespace retint
