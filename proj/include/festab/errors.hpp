#pragma once

#include <stdexcept>
#include <string>

namespace festab {

// Base class for all domain errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Exact and floating-point values were combined in one arithmetic step.
struct ModeMismatch : Error {
    using Error::Error;
};

// A tabulated model was queried at a point it does not store.
struct TabulatedMiss : Error {
    using Error::Error;
};

// A grid lacking the x -> -x symmetry was used where parity splitting needs it.
struct AsymmetricGrid : Error {
    using Error::Error;
};

// Invalid grid endpoints or depth.
struct BadRange : Error {
    using Error::Error;
};

// A composite argument (3x+y, 2y, ...) escaped the domain of a tabulated model.
struct OutOfDomain : Error {
    using Error::Error;
};

// Control function evaluated at zero with a negative exponent.
struct DomainError : Error {
    using Error::Error;
};

// Control function exponents fall in the dead band where neither iteration
// direction makes the stability series converge.
struct InadmissibleControl : Error {
    using Error::Error;
};

// The requested stability-bound series fails the ratio test.
struct DivergentSeries : Error {
    using Error::Error;
};

// Stabilization requires f(0) = 0.
struct NotAnchored : Error {
    using Error::Error;
};

// Coefficient recovery requires an exact solution of the functional equation.
struct NotASolution : Error {
    using Error::Error;
};

// Malformed or inconsistent experiment configuration.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace festab
