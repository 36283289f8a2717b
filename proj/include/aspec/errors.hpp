#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aspec {

/// Malformed or inconsistent caller input (degree mismatch, non-normal subgroup, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an enumeration would exceed its configured element cap.
class OverflowError : public std::runtime_error {
 public:
  OverflowError(const std::string& what, std::size_t lower_bound)
      : std::runtime_error(what), lower_bound_(lower_bound) {}

  /// Projected lower bound on the size that triggered the overflow.
  std::size_t lower_bound() const noexcept { return lower_bound_; }

 private:
  std::size_t lower_bound_;
};

/// An object that must exist could not be found; this signals a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace aspec
