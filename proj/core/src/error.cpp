#include "horseshoe/error.hpp"

namespace horseshoe {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::parity: return "parity";
    case ErrorCode::truncation: return "truncation";
    case ErrorCode::gluing: return "gluing";
    case ErrorCode::fixed_point: return "fixed-point";
    case ErrorCode::geometry: return "geometry";
    case ErrorCode::budget_exceeded: return "budget-exceeded";
    case ErrorCode::scale: return "scale";
    case ErrorCode::inconsistency: return "inconsistency";
    case ErrorCode::degenerate: return "degenerate";
    case ErrorCode::ordering_violation: return "ordering-violation";
    case ErrorCode::inconclusive: return "inconclusive";
    case ErrorCode::syntax: return "syntax";
    case ErrorCode::semantic: return "semantic";
    case ErrorCode::mode_mismatch: return "mode-mismatch";
    case ErrorCode::divergence: return "divergence";
    case ErrorCode::indistinguishable: return "indistinguishable";
    case ErrorCode::unknown_id: return "unknown-id";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

BudgetError::BudgetError(const std::string& message, double suggested_grid_step)
    : Error(ErrorCode::budget_exceeded, message),
      suggested_grid_step_(suggested_grid_step) {}

ParseError::ParseError(ErrorCode code, std::size_t line, std::size_t column,
                       const std::string& message)
    : Error(code, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

}  // namespace horseshoe
