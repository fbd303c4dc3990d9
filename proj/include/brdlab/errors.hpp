#pragma once

#include <stdexcept>
#include <string>

namespace brdlab {

// Invalid instances, profiles, configs, or out-of-domain arguments.
// The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A theoretical guarantee failed to hold at runtime (iteration caps,
// expectation bounds). The CLI maps this to exit code 3.
class BoundViolationError : public std::runtime_error {
 public:
  explicit BoundViolationError(const std::string& what) : std::runtime_error(what) {}
};

// Exhaustive enumeration would exceed the configured budget.
class BudgetExceededError : public std::runtime_error {
 public:
  explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace brdlab
