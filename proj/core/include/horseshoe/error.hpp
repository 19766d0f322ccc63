#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace horseshoe {

enum class ErrorCode {
  domain,
  overflow,
  parity,
  truncation,
  gluing,
  fixed_point,
  geometry,
  budget_exceeded,
  scale,
  inconsistency,
  degenerate,
  ordering_violation,
  inconclusive,
  syntax,
  semantic,
  mode_mismatch,
  divergence,
  indistinguishable,
  unknown_id,
  invalid_argument,
  io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when a grid enumeration would exceed the configured work budget.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& message, double suggested_grid_step);

  /// Smallest grid step that keeps the enumeration inside the budget.
  double suggested_grid_step() const noexcept { return suggested_grid_step_; }

 private:
  double suggested_grid_step_;
};

/// Diagnostic from the schedule language, formatted "line:col: message".
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, std::size_t column,
             const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

}  // namespace horseshoe
