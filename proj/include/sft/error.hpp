#pragma once

#include <stdexcept>
#include <string>

namespace sft {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes are incompatible (non-square where square is required,
/// product dimensions disagree, index out of range).
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A documented precondition does not hold for the input.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// An integer object was requested but the data only determine a rational one.
class NotRealizableError : public Error {
public:
  using Error::Error;
};

/// A move would leave the declared matrix class.
class IllegalMoveError : public Error {
public:
  using Error::Error;
};

/// Enumeration hit its combinatorial budget.
class BudgetExceededError : public Error {
public:
  using Error::Error;
};

/// Malformed matrix / polynomial / certificate text.
class ParseError : public Error {
public:
  ParseError(const std::string &what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line), column_(column) {}
  explicit ParseError(const std::string &what)
      : Error(what), line_(0), column_(0) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// A result failed its own post-condition check. Indicates a bug.
class InternalError : public Error {
public:
  using Error::Error;
};

} // namespace sft
