#pragma once

#include <stdexcept>
#include <string>

namespace hyst {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// staircase corner sequence violates the decreasing-staircase ordering
struct NonMonotoneStaircase : Error {
    using Error::Error;
};

// first input sample does not match the interface terminal value
struct InitialValueMismatch : Error {
    using Error::Error;
};

// weighting function has no finite support rectangle
struct UnboundedSupport : Error {
    using Error::Error;
};

// zero-area input design ran out of support before the residual area cancelled
struct MomentExhausted : Error {
    using Error::Error;
};

// phase plot is a line, not a loop
struct NoLoop : Error {
    using Error::Error;
};

// jw is (numerically) an eigenvalue of A
struct SingularAtFrequency : Error {
    using Error::Error;
};

struct StepSizeUnderflow : Error {
    using Error::Error;
};

// scenario file / argument validation
struct ValidationError : Error {
    using Error::Error;
};

}  // namespace hyst
