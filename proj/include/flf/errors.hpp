#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input; carries a 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A non-unit was substituted for an inverted variable.
class LocalizationViolated : public Error {
 public:
  explicit LocalizationViolated(const std::string& detail)
      : Error("localization violated: " + detail) {}
};

/// Exponent left the range [-2^31, 2^31).
class DegreeOverflow : public Error {
 public:
  DegreeOverflow() : Error("degree overflow: exponent exceeds 2^31") {}
};

/// Operands live in different rings or schemes.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

/// The reduction-step budget of a Groebner computation ran out.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(std::size_t steps, std::size_t basis_size, std::size_t pending_pairs)
      : Error("budget exhausted after " + std::to_string(steps) + " reduction steps (basis size " +
              std::to_string(basis_size) + ", " + std::to_string(pending_pairs) +
              " pairs pending)"),
        steps_(steps),
        basis_size_(basis_size),
        pending_pairs_(pending_pairs) {}
  std::size_t steps() const { return steps_; }
  std::size_t basis_size() const { return basis_size_; }
  std::size_t pending_pairs() const { return pending_pairs_; }

 private:
  std::size_t steps_;
  std::size_t basis_size_;
  std::size_t pending_pairs_;
};

}  // namespace flf
