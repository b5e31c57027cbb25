#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twoperiodic {

/// Invalid state or coefficient (non-positive, non-finite, non-rational input).
class DomainError : public std::domain_error {
 public:
  DomainError(std::string component, const std::string& what)
      : std::domain_error(what), component_(std::move(component)) {}

  const std::string& component() const noexcept { return component_; }

 private:
  std::string component_;
};

/// An operation was called on the wrong branch of the rank split.
class BranchError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed request: orbit too short, index out of the formula's range.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact arithmetic exceeded the configured representation budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative evaluation did not meet its stopping rule within the cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace twoperiodic
