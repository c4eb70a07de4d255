#pragma once

#include <stdexcept>
#include <string>

namespace dnoise {

// Input failed a precondition (shape, hermiticity, trace preservation, range).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A Hilbert-space dimension would exceed the configured dense-storage cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Malformed tabular input. The message names the offending row.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int row)
      : std::runtime_error(row > 0 ? "row " + std::to_string(row) + ": " + what : what),
        row_(row) {}

  int row() const noexcept { return row_; }

 private:
  int row_;
};

}  // namespace dnoise
