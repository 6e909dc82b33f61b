#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cf {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class NotDivisible : public Error {
 public:
  using Error::Error;
};

class MutationAtFrozen : public Error {
 public:
  explicit MutationAtFrozen(std::size_t vertex)
      : Error("mutation at frozen vertex " + std::to_string(vertex + 1)), vertex_(vertex) {}
  std::size_t vertex() const { return vertex_; }

 private:
  std::size_t vertex_;
};

// Raised when an exact division required by the Laurent phenomenon fails.
// Reaching this means an arithmetic bug, never a mathematical possibility.
class LaurentViolation : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string budget, std::size_t limit)
      : Error("budget exhausted: " + budget + " (limit " + std::to_string(limit) + ")"),
        budget_(std::move(budget)) {}
  const std::string& budget() const { return budget_; }

 private:
  std::string budget_;
};

class SizeLimit : public Error {
 public:
  using Error::Error;
};

class NotAcyclic : public Error {
 public:
  using Error::Error;
};

class NoMutableVertex : public Error {
 public:
  using Error::Error;
};

class BadCharacteristic : public Error {
 public:
  using Error::Error;
};

class VerificationFailed : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("parse error at line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace cf
