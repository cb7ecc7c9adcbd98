#pragma once

#include <stdexcept>
#include <string>

namespace circlekit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Checked integer arithmetic left the representable range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// An argument violates an operation's precondition.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// An enumeration would visit more points than the configured budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// A floating computation disagreed with its exact counterpart.
class NumericalInconsistency : public Error {
public:
    using Error::Error;
};

/// Input document does not follow its schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Coefficient vector length does not match the basis size.
class LengthMismatch : public SchemaError {
public:
    using SchemaError::SchemaError;
};

} // namespace circlekit
