#pragma once

#include <stdexcept>
#include <string>

namespace isogeo {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of an operation
// (wall contact, nonpositive radius, angle outside the wedge, ...).
struct DomainError : Error {
    using Error::Error;
};

// -- foliation ---------------------------------------------------------------

struct InvalidG : DomainError {
    using DomainError::DomainError;
};
struct OddGMismatch : DomainError {
    using DomainError::DomainError;
};
struct NonIntegerDimension : DomainError {
    using DomainError::DomainError;
};

// -- orbit space / curve flow ------------------------------------------------

struct TooFewSamples : Error {
    using Error::Error;
};
struct StepSizeUnderflow : Error {
    using Error::Error;
};
struct NonFinite : Error {
    using Error::Error;
};

// -- clifford ----------------------------------------------------------------

struct DimensionMismatch : Error {
    using Error::Error;
};
struct IndexError : Error {
    using Error::Error;
};
struct InvalidMultiplicity : DomainError {
    using DomainError::DomainError;
};
struct NotInStiefel : DomainError {
    using DomainError::DomainError;
};

// -- shape / audits ----------------------------------------------------------

struct DegenerateMetric : Error {
    using Error::Error;
};
struct NotCMC : Error {
    using Error::Error;
};
struct NotConstantHr : Error {
    using Error::Error;
};
struct FrameInconsistent : Error {
    using Error::Error;
};

} // namespace isogeo
