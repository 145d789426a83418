#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cohoforge {

/// Malformed group-spec text. `position()` is the byte offset of the failure.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A spec parsed but could not be turned into a concrete group (order cap,
/// bad twist, diverging coset enumeration, inconsistent homomorphism, ...).
class RealizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation would exceed its configured size budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace cohoforge
