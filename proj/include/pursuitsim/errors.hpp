#pragma once

#include <stdexcept>
#include <string>

namespace pursuitsim {

/// Raised when a scenario file cannot be parsed. Messages carry the
/// offending line number where one is known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when a structurally valid config violates a semantic constraint.
/// Messages name the offending section/field.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when a run cannot proceed (degenerate geometry, pole crossing).
/// Messages carry the tick index where the failure occurred.
class SimulationError : public std::runtime_error {
 public:
  explicit SimulationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pursuitsim
