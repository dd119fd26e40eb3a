#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slitlogic {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (range, size mismatch, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Malformed or incomplete input data (files, subset tables, configs).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a formula, with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace slitlogic
