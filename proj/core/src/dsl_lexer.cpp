#include "dsl_lexer.hpp"

#include <cctype>

#include "horseshoe/error.hpp"

namespace horseshoe::dsl::detail {

const char* describe(TokenKind kind) noexcept {
  switch (kind) {
    case TokenKind::identifier: return "identifier";
    case TokenKind::integer: return "integer";
    case TokenKind::decimal: return "number";
    case TokenKind::equals: return "'='";
    case TokenKind::range: return "'..'";
    case TokenKind::colon: return "':'";
    case TokenKind::plus: return "'+'";
    case TokenKind::minus: return "'-'";
    case TokenKind::star: return "'*'";
    case TokenKind::slash: return "'/'";
    case TokenKind::caret: return "'^'";
    case TokenKind::lparen: return "'('";
    case TokenKind::rparen: return "')'";
    case TokenKind::less: return "'<'";
    case TokenKind::less_equal: return "'<='";
    case TokenKind::greater: return "'>'";
    case TokenKind::greater_equal: return "'>='";
    case TokenKind::equal_equal: return "'=='";
    case TokenKind::not_equal: return "'!='";
    case TokenKind::end: return "end of input";
  }
  return "token";
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    const int tl = line;
    const int tc = column;
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      out.push_back({TokenKind::identifier, std::string(text.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    if (is_digit(c)) {
      std::size_t j = i;
      while (j < text.size() && is_digit(text[j])) ++j;
      TokenKind kind = TokenKind::integer;
      if (j + 1 < text.size() && text[j] == '.' && is_digit(text[j + 1])) {
        ++j;
        while (j < text.size() && is_digit(text[j])) ++j;
        kind = TokenKind::decimal;
      }
      out.push_back({kind, std::string(text.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    auto two = [&](char a, char b) { return c == a && i + 1 < text.size() && text[i + 1] == b; };
    TokenKind kind;
    std::size_t width = 1;
    if (two('.', '.')) {
      kind = TokenKind::range;
      width = 2;
    } else if (two('<', '=')) {
      kind = TokenKind::less_equal;
      width = 2;
    } else if (two('>', '=')) {
      kind = TokenKind::greater_equal;
      width = 2;
    } else if (two('=', '=')) {
      kind = TokenKind::equal_equal;
      width = 2;
    } else if (two('!', '=')) {
      kind = TokenKind::not_equal;
      width = 2;
    } else {
      switch (c) {
        case '=': kind = TokenKind::equals; break;
        case ':': kind = TokenKind::colon; break;
        case '+': kind = TokenKind::plus; break;
        case '-': kind = TokenKind::minus; break;
        case '*': kind = TokenKind::star; break;
        case '/': kind = TokenKind::slash; break;
        case '^': kind = TokenKind::caret; break;
        case '(': kind = TokenKind::lparen; break;
        case ')': kind = TokenKind::rparen; break;
        case '<': kind = TokenKind::less; break;
        case '>': kind = TokenKind::greater; break;
        default: {
          const unsigned char u = static_cast<unsigned char>(c);
          std::string shown = (u >= 0x20 && u < 0x7f) ? std::string(1, c) : "byte " + std::to_string(u);
          throw ParseError(ErrorCode::syntax, static_cast<std::size_t>(tl), static_cast<std::size_t>(tc),
                           "unexpected character '" + shown + "'");
        }
      }
    }
    out.push_back({kind, std::string(text.substr(i, width)), tl, tc});
    advance(width);
  }
  out.push_back({TokenKind::end, "", line, column});
  return out;
}

}  // namespace horseshoe::dsl::detail
