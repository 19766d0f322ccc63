#include <algorithm>
#include <limits>

#include "dsl_eval.hpp"
#include "dsl_lexer.hpp"
#include "horseshoe/dsl.hpp"
#include "horseshoe/error.hpp"
#include "horseshoe/gallery.hpp"

namespace horseshoe::dsl {

using detail::Token;
using detail::TokenKind;

namespace {

constexpr int kMaxDepth = 1000;
constexpr std::size_t kMaxIndex = std::size_t{1} << 40;
constexpr std::size_t kCheckedIndices = 64;

[[noreturn]] void fail(ErrorCode code, int line, int column, const std::string& message) {
  throw ParseError(code, static_cast<std::size_t>(std::max(line, 1)), static_cast<std::size_t>(std::max(column, 1)),
                   message);
}

ExprPtr make_leaf(ExprKind kind, const Token& at) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->line = at.line;
  e->column = at.column;
  return e;
}

ExprPtr make_number(mpq_class value, int line, int column) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::number;
  e->value = std::move(value);
  e->value.canonicalize();
  e->line = line;
  e->column = column;
  return e;
}

long bit_length(const mpz_class& z) {
  return z == 0 ? 0 : static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

// Constant powers are folded only when the result stays small.
bool foldable_power(const mpq_class& base, const mpq_class& exponent) {
  if (exponent.get_den() != 1) return false;
  if (abs(exponent.get_num()) > 4096) return false;
  const long bits = std::max(bit_length(base.get_num()), bit_length(base.get_den()));
  return bits * std::max<long>(1, mpz_class(abs(exponent.get_num())).get_si()) <= 65536;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  FamilySpec spec() {
    FamilySpec out;
    keyword("family");
    out.name = identifier("family name").text;
    keyword("mode");
    out.mode = mode();
    keyword("segments");
    const Token& index = identifier("index variable");
    if (index.text == "pi" || index.text == "inf") {
      fail(ErrorCode::syntax, index.line, index.column, "'" + index.text + "' cannot be the index variable");
    }
    out.index = index.text;
    index_ = out.index;
    expect(TokenKind::equals);
    out.first = index_bound();
    if (out.first == 0) fail(ErrorCode::semantic, previous().line, previous().column, "indices start at 1");
    expect(TokenKind::range);
    if (is_word("inf")) {
      ++pos_;
    } else {
      out.last = index_bound();
      if (*out.last < out.first) fail(ErrorCode::semantic, previous().line, previous().column, "empty index range");
    }
    if (is_word("from")) {
      ++pos_;
      const Token& side = identifier("'left' or 'right'");
      if (side.text == "left") {
        out.anchor = Anchor::left;
      } else if (side.text == "right") {
        out.anchor = Anchor::right;
      } else {
        fail(ErrorCode::syntax, side.line, side.column, "expected 'left' or 'right', found '" + side.text + "'");
      }
    }
    expect(TokenKind::colon);
    keyword("length");
    out.length = expr();
    if (!is_word("horseshoe")) fail_expected("'horseshoe'");
    while (is_word("horseshoe")) {
      ++pos_;
      keyword("where");
      HorseshoeRule rule;
      rule.predicate = predicate();
      expect(TokenKind::colon);
      keyword("legs");
      rule.legs = expr();
      out.rules.push_back(std::move(rule));
    }
    keyword("default");
    expect(TokenKind::colon);
    keyword("identity");
    if (peek().kind != TokenKind::end) fail_expected("end of input");
    return out;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& previous() const { return tokens_[pos_ == 0 ? 0 : pos_ - 1]; }

  bool is_word(const char* word) const {
    return peek().kind == TokenKind::identifier && peek().text == word;
  }

  [[noreturn]] void fail_expected(const std::string& what) const {
    const Token& t = peek();
    const std::string found = t.kind == TokenKind::end ? "end of input" : "'" + t.text + "'";
    fail(ErrorCode::syntax, t.line, t.column, "expected " + what + ", found " + found);
  }

  const Token& expect(TokenKind kind) {
    if (peek().kind != kind) fail_expected(detail::describe(kind));
    return tokens_[pos_++];
  }

  void keyword(const char* word) {
    if (!is_word(word)) fail_expected(std::string("'") + word + "'");
    ++pos_;
  }

  const Token& identifier(const char* what) {
    if (peek().kind != TokenKind::identifier) fail_expected(what);
    return tokens_[pos_++];
  }

  std::size_t index_bound() {
    const Token& t = expect(TokenKind::integer);
    if (t.text.size() > 13) fail(ErrorCode::semantic, t.line, t.column, "index bound too large");
    const std::size_t v = std::stoull(t.text);
    if (v > kMaxIndex) fail(ErrorCode::semantic, t.line, t.column, "index bound too large");
    return v;
  }

  Mode mode() {
    const Token& t = identifier("'rational' or 'float'");
    Mode m;
    if (t.text == "rational") return m;
    if (t.text != "float") fail(ErrorCode::syntax, t.line, t.column, "unknown mode '" + t.text + "'");
    m.rational = false;
    if (peek().kind == TokenKind::lparen) {
      ++pos_;
      const Token& bits = expect(TokenKind::integer);
      if (bits.text.size() > 6 || std::stoul(bits.text) < 16 || std::stoul(bits.text) > 65536) {
        fail(ErrorCode::semantic, bits.line, bits.column, "precision must be between 16 and 65536 bits");
      }
      m.bits = static_cast<unsigned>(std::stoul(bits.text));
      expect(TokenKind::rparen);
    }
    return m;
  }

  Predicate predicate() {
    Predicate p;
    const Token& t = identifier("predicate");
    if (t.text == "all") {
      p.kind = PredicateKind::all;
      return p;
    }
    if (t.text == "tower") {
      p.kind = PredicateKind::tower;
      return p;
    }
    if (t.text != index_) fail(ErrorCode::semantic, t.line, t.column, "unknown identifier '" + t.text + "'");
    p.kind = PredicateKind::compare;
    p.variable = t.text;
    switch (peek().kind) {
      case TokenKind::less: p.relation = Relation::lt; break;
      case TokenKind::less_equal: p.relation = Relation::le; break;
      case TokenKind::greater: p.relation = Relation::gt; break;
      case TokenKind::greater_equal: p.relation = Relation::ge; break;
      case TokenKind::equal_equal: p.relation = Relation::eq; break;
      case TokenKind::not_equal: p.relation = Relation::ne; break;
      default: fail_expected("comparison");
    }
    ++pos_;
    bool negative = false;
    if (peek().kind == TokenKind::minus) {
      negative = true;
      ++pos_;
    }
    const Token& n = expect(TokenKind::integer);
    if (n.text.size() > 13) fail(ErrorCode::semantic, n.line, n.column, "bound too large");
    p.bound = std::stol(n.text) * (negative ? -1 : 1);
    return p;
  }

  void enter(const Token& at) {
    if (++depth_ > kMaxDepth) fail(ErrorCode::syntax, at.line, at.column, "expression nested too deeply");
  }

  ExprPtr binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs, const Token& at) {
    const int depth = 1 + std::max(lhs->depth, rhs->depth);
    if (depth > kMaxDepth) fail(ErrorCode::syntax, at.line, at.column, "expression nested too deeply");
    if (lhs->kind == ExprKind::number && rhs->kind == ExprKind::number) {
      const mpq_class& a = lhs->value;
      const mpq_class& b = rhs->value;
      switch (kind) {
        case ExprKind::add: return make_number(a + b, lhs->line, lhs->column);
        case ExprKind::subtract: return make_number(a - b, lhs->line, lhs->column);
        case ExprKind::multiply: return make_number(a * b, lhs->line, lhs->column);
        case ExprKind::divide:
          if (b == 0) fail(ErrorCode::semantic, at.line, at.column, "division by zero");
          return make_number(a / b, lhs->line, lhs->column);
        case ExprKind::power:
          if (foldable_power(a, b)) {
            if (a == 0 && b < 0) fail(ErrorCode::semantic, at.line, at.column, "division by zero");
            const long e = b.get_num().get_si();
            mpz_class num;
            mpz_class den;
            mpz_pow_ui(num.get_mpz_t(), a.get_num().get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
            mpz_pow_ui(den.get_mpz_t(), a.get_den().get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
            return make_number(e < 0 ? mpq_class(den, num) : mpq_class(num, den), lhs->line, lhs->column);
          }
          break;
        default: break;
      }
    }
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    e->line = e->lhs->line;
    e->column = e->lhs->column;
    e->depth = depth;
    return e;
  }

  ExprPtr expr() {
    enter(peek());
    ExprPtr lhs = term();
    while (peek().kind == TokenKind::plus || peek().kind == TokenKind::minus) {
      const Token& op = tokens_[pos_++];
      ExprPtr rhs = term();
      lhs = binary(op.kind == TokenKind::plus ? ExprKind::add : ExprKind::subtract, lhs, rhs, op);
    }
    --depth_;
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    while (peek().kind == TokenKind::star || peek().kind == TokenKind::slash) {
      const Token& op = tokens_[pos_++];
      ExprPtr rhs = factor();
      lhs = binary(op.kind == TokenKind::star ? ExprKind::multiply : ExprKind::divide, lhs, rhs, op);
    }
    return lhs;
  }

  ExprPtr factor() {
    enter(peek());
    ExprPtr out;
    if (peek().kind == TokenKind::minus) {
      const Token& op = tokens_[pos_++];
      ExprPtr inner = factor();
      if (inner->kind == ExprKind::number) {
        out = make_number(-inner->value, op.line, op.column);
      } else {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::negate;
        e->lhs = inner;
        e->line = op.line;
        e->column = op.column;
        e->depth = inner->depth + 1;
        out = e;
      }
    } else {
      out = base();
      if (peek().kind == TokenKind::caret) {
        const Token& op = tokens_[pos_++];
        ExprPtr exponent = factor();
        out = binary(ExprKind::power, out, exponent, op);
      }
    }
    --depth_;
    return out;
  }

  ExprPtr base() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::integer: {
        ++pos_;
        return make_number(mpq_class(mpz_class(t.text)), t.line, t.column);
      }
      case TokenKind::decimal: {
        ++pos_;
        const std::size_t dot = t.text.find('.');
        const std::string digits = t.text.substr(0, dot) + t.text.substr(dot + 1);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, t.text.size() - dot - 1);
        return make_number(mpq_class(mpz_class(digits), scale), t.line, t.column);
      }
      case TokenKind::identifier: {
        if (t.text == "family" || t.text == "segments" || t.text == "horseshoe" || t.text == "default") {
          fail_expected("expression");
        }
        ++pos_;
        if (t.text == "pi") return make_leaf(ExprKind::pi, t);
        if (t.text != index_) fail(ErrorCode::semantic, t.line, t.column, "unknown identifier '" + t.text + "'");
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::index;
        e->name = t.text;
        e->line = t.line;
        e->column = t.column;
        return e;
      }
      case TokenKind::lparen: {
        ++pos_;
        ExprPtr inner = expr();
        expect(TokenKind::rparen);
        return inner;
      }
      default: fail_expected("expression");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  std::string index_;
};

// Indices handled by rule `r` under first-match semantics, at most `limit`.
std::vector<std::size_t> rule_indices(const FamilySpec& spec, std::size_t r, std::size_t limit) {
  std::vector<std::size_t> out;
  std::size_t k = spec.first;
  for (int guard = 0; guard < 4096 && out.size() < limit; ++guard) {
    auto next = spec.rules[r].predicate.next_match(k);
    if (!next || (spec.last && *next > *spec.last) || *next > kMaxIndex) break;
    k = *next;
    bool earlier = false;
    for (std::size_t q = 0; q < r; ++q) earlier = earlier || spec.rules[q].predicate.matches(k);
    if (!earlier) out.push_back(k);
    ++k;
  }
  return out;
}

void check_semantics(const FamilySpec& spec) {
  Mode probe = spec.mode;
  if (probe.rational && contains_pi(*spec.length)) probe = Mode{false, 64};
  const Expr& len = *spec.length;
  const std::size_t stop = spec.last ? std::min(*spec.last, spec.first + kCheckedIndices - 1)
                                     : spec.first + kCheckedIndices - 1;
  for (std::size_t k = spec.first; k <= stop; ++k) {
    Real v;
    try {
      v = evaluate(len, spec.index, k, probe);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::overflow || e.code() == ErrorCode::mode_mismatch) continue;
      fail(ErrorCode::semantic, len.line, len.column,
           "length undefined at " + spec.index + "=" + std::to_string(k) + ": " + e.what());
    }
    if (!definitely_greater(v, Real(0))) {
      fail(ErrorCode::semantic, len.line, len.column,
           "non-positive length at " + spec.index + "=" + std::to_string(k));
    }
  }

  for (std::size_t r = 0; r < spec.rules.size(); ++r) {
    const Expr& legs = *spec.rules[r].legs;
    const std::vector<std::size_t> indices = rule_indices(spec, r, kCheckedIndices);
    for (const bool odd_index : {false, true}) {
      const bool occurs = std::any_of(indices.begin(), indices.end(),
                                      [&](std::size_t k) { return (k % 2 == 1) == odd_index; });
      if (occurs && detail::parity(legs, odd_index) == detail::Parity::even) {
        fail(ErrorCode::semantic, legs.line, legs.column,
             std::string("even legs for ") + (odd_index ? "odd " : "even ") + spec.index);
      }
    }
    Mode legs_mode = spec.mode;
    if (legs_mode.rational && contains_pi(legs)) legs_mode = Mode{false, 64};
    for (const std::size_t k : indices) {
      LegCount c;
      try {
        c = detail::legs_count(legs, spec.index, k, legs_mode);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::overflow) continue;
        fail(ErrorCode::semantic, legs.line, legs.column,
             "legs undefined at " + spec.index + "=" + std::to_string(k) + ": " + e.what());
      }
      const std::string at = " at " + spec.index + "=" + std::to_string(k);
      if (c.is_exact()) {
        if (c.value() < 3) fail(ErrorCode::semantic, legs.line, legs.column, "fewer than 3 legs" + at);
        if (mpz_even_p(c.value().get_mpz_t())) fail(ErrorCode::semantic, legs.line, legs.column, "even legs" + at);
      } else if (c.odd() && !*c.odd()) {
        fail(ErrorCode::semantic, legs.line, legs.column, "even legs" + at);
      }
    }
  }
}

int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::add:
    case ExprKind::subtract: return 1;
    case ExprKind::multiply:
    case ExprKind::divide: return 2;
    case ExprKind::negate: return 3;
    case ExprKind::power: return 4;
    default: return 5;
  }
}

std::string emit_child(const Expr& child, bool parens) {
  return parens ? "(" + emit(child) + ")" : emit(child);
}

std::string relation_text(Relation r) {
  switch (r) {
    case Relation::lt: return "<";
    case Relation::le: return "<=";
    case Relation::gt: return ">";
    case Relation::ge: return ">=";
    case Relation::eq: return "==";
    case Relation::ne: return "!=";
  }
  return "==";
}

}  // namespace

bool same_expr(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::number: return a.value == b.value;
    case ExprKind::pi: return true;
    case ExprKind::index: return a.name == b.name;
    case ExprKind::negate: return same_expr(*a.lhs, *b.lhs);
    default: return same_expr(*a.lhs, *b.lhs) && same_expr(*a.rhs, *b.rhs);
  }
}

bool contains_pi(const Expr& e) {
  if (e.kind == ExprKind::pi) return true;
  if (e.lhs && contains_pi(*e.lhs)) return true;
  return e.rhs && contains_pi(*e.rhs);
}

bool Predicate::matches(std::size_t k) const {
  const long kk = static_cast<long>(k);
  switch (kind) {
    case PredicateKind::all: return true;
    case PredicateKind::tower: return is_tower(k);
    case PredicateKind::compare:
      switch (relation) {
        case Relation::lt: return kk < bound;
        case Relation::le: return kk <= bound;
        case Relation::gt: return kk > bound;
        case Relation::ge: return kk >= bound;
        case Relation::eq: return kk == bound;
        case Relation::ne: return kk != bound;
      }
  }
  return false;
}

std::optional<std::size_t> Predicate::next_match(std::size_t k) const {
  const long kk = static_cast<long>(k);
  switch (kind) {
    case PredicateKind::all: return k;
    case PredicateKind::tower: return next_tower(k);
    case PredicateKind::compare:
      switch (relation) {
        case Relation::lt: return kk < bound ? std::optional<std::size_t>(k) : std::nullopt;
        case Relation::le: return kk <= bound ? std::optional<std::size_t>(k) : std::nullopt;
        case Relation::gt: return static_cast<std::size_t>(std::max(kk, bound + 1));
        case Relation::ge: return static_cast<std::size_t>(std::max(kk, bound));
        case Relation::eq:
          return kk <= bound ? std::optional<std::size_t>(static_cast<std::size_t>(bound)) : std::nullopt;
        case Relation::ne: return kk != bound ? k : k + 1;
      }
  }
  return std::nullopt;
}

bool same_spec(const FamilySpec& a, const FamilySpec& b) {
  if (a.name != b.name || a.mode.rational != b.mode.rational || a.index != b.index || a.first != b.first ||
      a.last != b.last || a.anchor != b.anchor || a.rules.size() != b.rules.size()) {
    return false;
  }
  if (!a.mode.rational && a.mode.bits != b.mode.bits) return false;
  if (!same_expr(*a.length, *b.length)) return false;
  for (std::size_t i = 0; i < a.rules.size(); ++i) {
    const Predicate& p = a.rules[i].predicate;
    const Predicate& q = b.rules[i].predicate;
    if (p.kind != q.kind) return false;
    if (p.kind == PredicateKind::compare &&
        (p.variable != q.variable || p.relation != q.relation || p.bound != q.bound)) {
      return false;
    }
    if (!same_expr(*a.rules[i].legs, *b.rules[i].legs)) return false;
  }
  return true;
}

FamilySpec parse(std::string_view text) {
  if (text.size() > kMaxSourceBytes) {
    throw ParseError(ErrorCode::syntax, 1, 1, "input exceeds " + std::to_string(kMaxSourceBytes) + " bytes");
  }
  Parser parser(detail::tokenize(text));
  FamilySpec spec = parser.spec();
  check_semantics(spec);
  return spec;
}

std::string emit(const Expr& e) {
  switch (e.kind) {
    case ExprKind::number:
      if (e.value.get_den() == 1 && e.value >= 0) return e.value.get_num().get_str();
      return "(" + e.value.get_str() + ")";
    case ExprKind::pi: return "pi";
    case ExprKind::index: return e.name;
    case ExprKind::negate: return "-" + emit_child(*e.lhs, precedence(*e.lhs) < 4);
    case ExprKind::power:
      return emit_child(*e.lhs, precedence(*e.lhs) < 5) + "^" + emit_child(*e.rhs, precedence(*e.rhs) < 4);
    default: break;
  }
  const int p = precedence(e);
  const char* op = e.kind == ExprKind::add        ? " + "
                   : e.kind == ExprKind::subtract ? " - "
                   : e.kind == ExprKind::multiply ? "*"
                                                  : "/";
  const bool left = precedence(*e.lhs) < p || e.lhs->kind == ExprKind::negate;
  const bool right = precedence(*e.rhs) <= p || e.rhs->kind == ExprKind::negate;
  return emit_child(*e.lhs, left) + op + emit_child(*e.rhs, right);
}

std::string emit(const FamilySpec& spec) {
  std::string out = "family " + spec.name + " mode ";
  out += spec.mode.rational ? "rational" : "float(" + std::to_string(spec.mode.bits) + ")";
  out += "\nsegments " + spec.index + " = " + std::to_string(spec.first) + "..";
  out += spec.last ? std::to_string(*spec.last) : "inf";
  if (spec.anchor == Anchor::right) out += " from right";
  out += " : length " + emit(*spec.length) + "\n";
  for (const HorseshoeRule& rule : spec.rules) {
    out += "horseshoe where ";
    switch (rule.predicate.kind) {
      case PredicateKind::all: out += "all"; break;
      case PredicateKind::tower: out += "tower"; break;
      case PredicateKind::compare:
        out += rule.predicate.variable + " " + relation_text(rule.predicate.relation) + " " +
               std::to_string(rule.predicate.bound);
        break;
    }
    out += " : legs " + emit(*rule.legs) + "\n";
  }
  out += "default : identity\n";
  return out;
}

}  // namespace horseshoe::dsl
