#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace isosym {

/// Short scientific rendering of a double for error messages.
inline std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

/// Base class for every failure the library reports.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised for invalid caller input (shape, parse, precondition).
class InputError : public Error {
public:
    using Error::Error;
};

/// Raised when an iterative or numerical routine cannot honour its contract.
class NumericalError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public InputError {
public:
    using InputError::InputError;
};

class ArityMismatch : public InputError {
public:
    using InputError::InputError;
};

class InvalidParams : public InputError {
public:
    using InputError::InputError;
};

class ParseError : public InputError {
public:
    using InputError::InputError;
};

class CommutationViolated : public InputError {
public:
    using InputError::InputError;
};

class CrossCommutationViolated : public InputError {
public:
    using InputError::InputError;
};

class BetaNotNormalized : public InputError {
public:
    using InputError::InputError;
};

class HypothesisUnmet : public InputError {
public:
    using InputError::InputError;
};

class InvariantViolation : public InputError {
public:
    using InputError::InputError;
};

class Overflow : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class TooLarge : public InputError {
public:
    using InputError::InputError;
};

class ConvergenceFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// The two equivalent expressions of Lambda_{m,n} differ beyond tolerance.
class FormsDisagree : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A compressed operator failed to leave an eigenspace invariant.
class InvarianceViolation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace isosym
