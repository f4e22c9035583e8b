#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace clawdeg {

// Malformed text input. Line and column are 1-based; line is 1 for
// single-line inputs.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

// An enumeration would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded(const std::string& what, mpz_class count)
      : std::runtime_error(what), count_(std::move(count)) {}

  const mpz_class& count() const { return count_; }

private:
  mpz_class count_;
};

// An input lies outside a property's promise domain.
class PromiseViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace clawdeg
