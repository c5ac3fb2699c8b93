#pragma once

#include <stdexcept>
#include <string>

namespace dgpe {

/// Invalid user-supplied configuration (grids, parameters, files).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Violated operation precondition (bad representation, degenerate map, ...).
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Failure during time integration (caustic horizon, dt bound, mass loss).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dgpe
