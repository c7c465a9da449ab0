#pragma once

#include <stdexcept>
#include <string>

namespace msc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shape mismatch: non-square matrix, wrong vector length, incompatible dims.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Matrix is singular to working precision (LU pivot below threshold).
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// Iterative eigensolver exceeded its sweep budget.
class EigenConvergenceError : public Error {
public:
    using Error::Error;
};

/// Symmetric part of a scaling matrix has eigenvalues of both signs or
/// within the rejection band around zero.
class IndefiniteScalingError : public Error {
public:
    using Error::Error;
};

class DisconnectedGraphError : public Error {
public:
    using Error::Error;
};

/// Damping gain at or below the sharp critical gain; the closed loop does
/// not attain the limit.
class UnstableGainError : public Error {
public:
    using Error::Error;
};

/// Computed spectrum contradicts the zero-count / positive-real-part
/// structure guaranteed for valid systems. Signals a bug or an invalid
/// scaling set.
class LemmaViolationError : public Error {
public:
    using Error::Error;
};

/// dt violates the RK4 stability heuristic for the system at hand.
class StepTooLargeError : public Error {
public:
    using Error::Error;
};

/// State exceeded the overflow guard where divergence is not a legitimate
/// outcome (single-integrator runs).
class NonFiniteError : public Error {
public:
    using Error::Error;
};

/// The permanent dual-path RHS self-check tripped.
class SelfCheckError : public Error {
public:
    using Error::Error;
};

/// Malformed scenario input. Carries the offending field's path.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& message)
        : Error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace msc
