#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nmr {

// Base for every error raised by the kernel.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        message_(what),
        line_(line),
        column_(column) {}

  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

// Well-formed input that the engines cannot process: caps, zero mass,
// non-normal theories where normality is required, invalid parameters.
class SemanticError : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public SemanticError {
 public:
  using SemanticError::SemanticError;
};

class ZeroMassError : public SemanticError {
 public:
  using SemanticError::SemanticError;
};

}  // namespace nmr
