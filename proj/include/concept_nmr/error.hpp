#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cnmr {

// Bad user input: unknown identifiers, malformed files, violated preconditions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column = 0)
      : InputError(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    std::string where = "line " + std::to_string(line);
    if (column != 0) where += ", column " + std::to_string(column);
    return where + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

// A formula mentions a variable the valuation does not bind.
class EvaluationError : public InputError {
 public:
  using InputError::InputError;
};

// Bounded search refused because its candidate space exceeds the ceiling.
class SearchLimitError : public InputError {
 public:
  SearchLimitError(const std::string& message, double estimate)
      : InputError(message), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

}  // namespace cnmr
