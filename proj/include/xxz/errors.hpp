#pragma once

#include <stdexcept>
#include <string>

namespace xxz {

/// Input matrix or state violates a structural requirement (Hermiticity,
/// unit trace, positivity).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Argument outside the domain of a physical quantity, e.g. T <= 0.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Caller asked for something that makes no sense (wrong model tag,
/// unknown axis, unknown figure id).
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical routine failed to produce a trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace xxz
