#pragma once

#include <string>

#include "horseshoe/block.hpp"
#include "horseshoe/dsl.hpp"

namespace horseshoe::dsl::detail {

enum class Parity { even, odd, unknown };

/// Parity of an integer-valued expression when the index has the given parity.
Parity parity(const Expr& expr, bool index_odd);
bool is_constant(const Expr& expr);

/// log of the value, computed without forming huge powers.
Real log_evaluate(const Expr& expr, const std::string& index, std::size_t k, const Mode& mode);
/// Leg count at k; powers of integer bases stay symbolic when huge.
LegCount legs_count(const Expr& expr, const std::string& index, std::size_t k, const Mode& mode);

}  // namespace horseshoe::dsl::detail
