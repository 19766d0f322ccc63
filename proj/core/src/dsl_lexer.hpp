#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace horseshoe::dsl::detail {

enum class TokenKind {
  identifier,
  integer,
  decimal,
  equals,
  range,
  colon,
  plus,
  minus,
  star,
  slash,
  caret,
  lparen,
  rparen,
  less,
  less_equal,
  greater,
  greater_equal,
  equal_equal,
  not_equal,
  end,
};

const char* describe(TokenKind kind) noexcept;

struct Token {
  TokenKind kind;
  std::string text;
  int line;
  int column;
};

/// Whitespace and '#' comments are skipped. Throws ParseError on bad input.
std::vector<Token> tokenize(std::string_view text);

}  // namespace horseshoe::dsl::detail
