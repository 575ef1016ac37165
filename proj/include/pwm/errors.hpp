#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pwm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input data violates a documented invariant (maps, partitions, presets).
class ValidationError : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

class MixedFields : public Error {
public:
    MixedFields(long d1, long d2)
        : Error("mixed fields: sqrt(" + std::to_string(d1) + ") and sqrt(" + std::to_string(d2) + ")") {}
};

/// Text could not be parsed; line and column are 1-based.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : ValidationError("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class InvalidMap : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InvalidSlope : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InvalidLengths : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class OutOfDomain : public Error {
public:
    using Error::Error;
};

class OutOfBranchDomain : public OutOfDomain {
public:
    using OutOfDomain::OutOfDomain;
};

class NotInsideBranch : public Error {
public:
    using Error::Error;
};

class BlocksNotPartition : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class MarkovValidationFailed : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NotEventuallySurjective : public Error {
public:
    using Error::Error;
};

class RangeNotSingleInterval : public Error {
public:
    using Error::Error;
};

class BoundExceeded : public Error {
public:
    BoundExceeded(const std::string& what, std::size_t bound)
        : Error(what + " (bound " + std::to_string(bound) + ")"), bound_(bound) {}
    std::size_t bound() const { return bound_; }

private:
    std::size_t bound_;
};

/// Internal cross-check failed. Indicates a bug, never bad input.
class ConsistencyFailure : public Error {
public:
    using Error::Error;
};

class DiagramTooWide : public Error {
public:
    using Error::Error;
};

} // namespace pwm
