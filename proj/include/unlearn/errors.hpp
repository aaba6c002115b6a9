#pragma once

#include <stdexcept>
#include <string>

namespace unlearn {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Tensor/parameter dimension mismatch.
struct ShapeError : Error {
    using Error::Error;
};

// Invalid argument or precondition violation.
struct ArgumentError : Error {
    using Error::Error;
};

// A split produced an empty forget or retain partition.
struct DegenerateSplitError : ArgumentError {
    using ArgumentError::ArgumentError;
};

// Operation requires a deeper architecture (e.g. penultimate-layer features
// on a single-layer model).
struct UnsupportedArchitectureError : Error {
    using Error::Error;
};

// Malformed or unreadable persisted file.
struct FormatError : Error {
    using Error::Error;
};

// Persisted content parsed but failed semantic validation.
struct ValidationError : Error {
    using Error::Error;
};

// AIN denominator is zero.
struct UndefinedAinError : Error {
    using Error::Error;
};

}  // namespace unlearn
