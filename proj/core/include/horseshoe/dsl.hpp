#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "horseshoe/interval_map.hpp"
#include "horseshoe/real.hpp"

namespace horseshoe::dsl {

inline constexpr std::size_t kMaxSourceBytes = 64 * 1024;

enum class ExprKind { number, pi, index, negate, add, subtract, multiply, divide, power };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Arithmetic over the index variable. Constant subexpressions are folded to
/// `number` nodes by the parser.
struct Expr {
  ExprKind kind = ExprKind::number;
  mpq_class value;
  std::string name;
  ExprPtr lhs;
  ExprPtr rhs;
  int line = 0;
  int column = 0;
  /// Height of the tree rooted here.
  int depth = 1;
};

/// Structural equality, ignoring source positions.
bool same_expr(const Expr& a, const Expr& b);
bool contains_pi(const Expr& e);

enum class PredicateKind { all, tower, compare };
enum class Relation { lt, le, gt, ge, eq, ne };

struct Predicate {
  PredicateKind kind = PredicateKind::all;
  std::string variable;
  Relation relation = Relation::eq;
  long bound = 0;

  bool matches(std::size_t k) const;
  /// Smallest matching index >= k.
  std::optional<std::size_t> next_match(std::size_t k) const;
};

struct HorseshoeRule {
  Predicate predicate;
  ExprPtr legs;
};

struct Mode {
  bool rational = true;
  unsigned bits = kDefaultPrecision;
};

struct FamilySpec {
  std::string name;
  Mode mode;
  std::string index;
  std::size_t first = 1;
  std::optional<std::size_t> last;
  Anchor anchor = Anchor::left;
  ExprPtr length;
  std::vector<HorseshoeRule> rules;
};

bool same_spec(const FamilySpec& a, const FamilySpec& b);

/// Throws ParseError ("line:col: message") for syntax and semantic errors.
FamilySpec parse(std::string_view text);

/// Canonical text; parse(emit(s)) is structurally equal to s.
std::string emit(const FamilySpec& spec);
std::string emit(const Expr& expr);

/// Value at index k: exact in rational mode, a float ball otherwise.
Real evaluate(const Expr& expr, const std::string& index, std::size_t k, const Mode& mode);

/// log f(k) ~ rate * k + power * log k as k grows.
struct Growth {
  Real rate;
  Real power;
};
std::optional<Growth> growth(const Expr& expr, const std::string& index);

struct CompileOptions {
  std::size_t k_max = kDefaultKMax;
};

IntervalMap compile(const FamilySpec& spec, const CompileOptions& options = {});
IntervalMap compile_text(std::string_view text, const CompileOptions& options = {});

}  // namespace horseshoe::dsl
