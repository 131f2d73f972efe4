#pragma once

#include <stdexcept>
#include <string>

namespace rotalg {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid input or violated precondition.
struct DomainError : Error {
    using Error::Error;
};

// A search or tolerance ladder was exhausted before the goal was met.
struct PlanError : Error {
    using Error::Error;
};

struct MismatchedParameters : DomainError { using DomainError::DomainError; };
struct NotBoundedAway : DomainError { using DomainError::DomainError; };
struct TooSmallL : DomainError { using DomainError::DomainError; };
struct NotSelfAdjoint : DomainError { using DomainError::DomainError; };
struct NotUnimodular : DomainError { using DomainError::DomainError; };
struct OutOfRange : DomainError { using DomainError::DomainError; };
struct ParseError : DomainError { using DomainError::DomainError; };

struct ToleranceNotMet : PlanError { using PlanError::PlanError; };
struct NoPlanFound : PlanError { using PlanError::PlanError; };
struct NotCovered : PlanError { using PlanError::PlanError; };

} // namespace rotalg
