#pragma once

#include <stdexcept>

namespace pulsemax {

// The input data cannot support the requested computation: empty or
// malformed series, zero exceedances, inconsistent counts.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computation degenerated numerically: singular fit, non-positive
// variance estimate, undefined autocorrelation.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pulsemax
