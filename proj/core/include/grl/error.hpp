#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside the operation's domain (bad order, mismatched m, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A configured size cap (group order, arc count, copy count, search cap) was exceeded.
class SizeLimit : public Error {
 public:
  using Error::Error;
};

/// A caller-certified precondition turned out to be false.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A search finished within its caps without finding what was asked for.
class NotFound : public Error {
 public:
  using Error::Error;
};

/// Malformed experiment or instance configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in the equation language; positions are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// The characteristic vectors of a system are linearly dependent.
class IndependenceViolation : public Error {
 public:
  IndependenceViolation(const std::string& message, std::size_t dependent_row)
      : Error(message), dependent_row_(dependent_row) {}

  /// 0-based index of the first equation lying in the span of the earlier ones.
  std::size_t dependent_row() const noexcept { return dependent_row_; }

 private:
  std::size_t dependent_row_;
};

}  // namespace grl
