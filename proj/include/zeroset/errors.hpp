#pragma once

#include <stdexcept>
#include <string>

namespace zeroset {

/// Argument outside the mathematical domain of an operation (i = 0, x odd, i >= j, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid experiment or command configuration.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Request above a configured ceiling (exact table size, grid size, ...).
class CapacityError : public std::length_error {
 public:
  CapacityError(const std::string& what, unsigned long long ceiling)
      : std::length_error(what + " (ceiling " + std::to_string(ceiling) + ")"), ceiling_(ceiling) {}

  unsigned long long ceiling() const noexcept { return ceiling_; }

 private:
  unsigned long long ceiling_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zeroset
