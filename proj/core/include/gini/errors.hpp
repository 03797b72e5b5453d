#pragma once

#include <stdexcept>
#include <string>

namespace gini {

/// Raised when an argument lies outside the domain of a mean or auxiliary function
/// (non-positive or non-finite samples, non-finite parameters, degenerate intervals).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised by the constrained minimizer when its budget produced no feasible point.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a requested scan exceeds its evaluation cap.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gini
