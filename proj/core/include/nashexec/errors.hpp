#pragma once

#include <stdexcept>
#include <string>

namespace nashexec {

// Raised for malformed or inconsistent run configuration (bad JSON, missing
// fields, contradictory options). CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a linear solve or eigensolver fails numerically (singular or
// near-singular system, non-finite result). Carries a condition estimate of
// the offending matrix when one is available (0 means unknown). CLI maps
// this to exit code 2.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double condition_estimate = 0.0)
      : std::runtime_error(what), condition_estimate(condition_estimate) {}

  double condition_estimate;
};

}  // namespace nashexec
