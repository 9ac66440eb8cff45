// errors.hpp — error taxonomy; the CLI maps each type to a distinct exit code

#pragma once

#include <stdexcept>
#include <string>

namespace collapse {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid physical or numerical parameters (negative mass, t < 0, n < 2, ...).
struct ParameterError : Error {
    using Error::Error;
};

// Operation asked for outside the regime its closed form is derived in
// (e.g. asymptotic Brownian width with an overdamped oscillator).
struct UnsupportedRegimeError : Error {
    using Error::Error;
};

// A Gaussian density was requested with zero total width.
struct DegenerateWidthError : Error {
    using Error::Error;
};

// A numerical oracle could not meet its accuracy contract. Always thrown,
// never downgraded to a warning.
struct OracleFailureError : Error {
    using Error::Error;
};

// Eigenbasis of Q(t) is singular (a2 ~ 0, t near multiples of pi/omega).
struct SingularEigenbasisError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct UnknownExperimentError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace collapse
