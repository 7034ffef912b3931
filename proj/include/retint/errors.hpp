#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace retint {

// Error taxonomy mapped onto CLI exit codes:
//   ParameterError                      -> 2
//   InsufficientDataError (+ subtypes)  -> 3
//   SolverError, anything else          -> 1

struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InsufficientDataError : std::runtime_error {
    explicit InsufficientDataError(const std::string& msg, std::size_t count = 0)
        : std::runtime_error(msg), count(count) {}
    std::size_t count;  // how many events/samples/points were actually available
};

struct EstimationError : InsufficientDataError {
    using InsufficientDataError::InsufficientDataError;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace retint
