#pragma once

#include <stdexcept>
#include <string>

namespace spectral {

// Invalid arguments or configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical self-check failed: quadrature tolerance, aliasing, truncated
// tails, solver blow-up (CLI exit code 3).
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AliasingError : public AccuracyError {
 public:
  using AccuracyError::AccuracyError;
};

// A guardrail on problem size was hit (CLI exit code 3).
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spectral
