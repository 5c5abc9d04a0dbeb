#include "rcm/errors.hpp"

#include <utility>

namespace rcm {

LimitViolation::LimitViolation(std::string axis, double excess_rad)
    : Error("joint limit violated on " + axis + " by " + std::to_string(excess_rad) + " rad"),
      axis_(std::move(axis)),
      excess_(excess_rad) {}

ParseError::ParseError(const std::string& what, std::size_t row, std::size_t column)
    : Error(what + " (row " + std::to_string(row) + ", column " + std::to_string(column) + ")"),
      row_(row),
      column_(column) {}

ConfigError::ConfigError(std::string field, const std::string& what)
    : Error(field + ": " + what), field_(std::move(field)) {}

}  // namespace rcm
