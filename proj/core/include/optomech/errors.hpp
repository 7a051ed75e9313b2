// errors.hpp — typed error conditions raised by the model and the Fock validator

#pragma once

#include <stdexcept>
#include <string>

namespace optomech {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter set violates a documented invariant (nonpositive frequency, ...).
struct InvalidParams : Error {
    using Error::Error;
};

// Omega_M + 4*alpha vanished: displacement, zeta and the branch propagator
// divide by it, so they are undefined exactly at the critical point.
struct DegenerateFrequency : Error {
    using Error::Error;
};

// Operation needs a normalizable ground state / real squeeze, which only
// exists while Omega_M + 4*alpha > 0.
struct HyperbolicRegime : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// Doubling the Fock cutoff never brought successive values within tolerance.
struct NonConvergence : Error {
    using Error::Error;
};

// Population leaked into the guard levels at the top of the truncated ladder.
struct CutoffTooSmall : Error {
    using Error::Error;
};

struct MemoryBudgetExceeded : Error {
    using Error::Error;
};

} // namespace optomech
