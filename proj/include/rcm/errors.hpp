#pragma once

#include <stdexcept>
#include <string>

namespace rcm {

// Base of every error thrown by the library. CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the modeled domain of a kinematic map.
class DomainError : public Error {
public:
    using Error::Error;
};

class LimitViolation : public Error {
public:
    LimitViolation(std::string axis, double excess_rad);
    const std::string& axis() const noexcept { return axis_; }
    double excess() const noexcept { return excess_; }

private:
    std::string axis_;
    double excess_;
};

class DepthOutOfRange : public Error {
public:
    using Error::Error;
};

class DegenerateTarget : public Error {
public:
    using Error::Error;
};

// Malformed tabular data. Row and column are 1-based, 0 when not applicable.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row, std::size_t column);
    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

class NegativeLength : public ParseError {
public:
    using ParseError::ParseError;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class ResolutionTooCoarse : public Error {
public:
    using Error::Error;
};

class InfeasibleBounds : public Error {
public:
    using Error::Error;
};

// Invalid configuration; field() names the offending key.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what);
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace rcm
