#pragma once

#include <stdexcept>
#include <string>

namespace pecd {

// Bad user input or a violated precondition. The CLI maps this to exit code 1.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computation that could not be completed (non-convergence, overflow,
// vanishing normalization). The CLI maps this to exit code 2.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The two-photon step is forbidden for the requested tensor and polarization.
struct ForbiddenTransition : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace pecd
