#pragma once

#include <stdexcept>
#include <string>

namespace qplace {

/// Malformed input: parse failures, invalid tables, inconsistent circuits.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The instance is well formed but cannot be realised (unavailable
/// interactions, no embedding, disconnected routing).
class InfeasibleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive oracle refused to run because the search space is too big.
class BudgetExceededError : public std::runtime_error {
public:
  BudgetExceededError(const std::string& what, std::string count)
      : std::runtime_error(what), count_(std::move(count)) {}

  /// Exact size of the refused search space, in decimal.
  [[nodiscard]] const std::string& count() const { return count_; }

private:
  std::string count_;
};

} // namespace qplace
