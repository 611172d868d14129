#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "codeplay/dsl/ast.hpp"

namespace codeplay::dsl::detail {

enum class Tok {
  identifier, number, text, docstring, newline, end,
  lparen, rparen, lbrace, rbrace, lbracket, rbracket,
  comma, dot, semicolon, at,
  assign, plus_assign, minus_assign, star_assign, slash_assign,
  plus, minus, star, slash, percent,
  lt, le, gt, ge, eq, ne,
  kw_fn, kw_if, kw_elif, kw_else, kw_while, kw_for, kw_in, kw_return, kw_break,
  kw_continue, kw_pass, kw_and, kw_or, kw_not, kw_true, kw_false, kw_none,
};

struct Token {
  Tok kind = Tok::end;
  std::string text;
  double number = 0.0;
  SourceLoc loc;
};

/// Tokenizes DSL source. Newlines are significant except inside () and [].
/// Throws SyntaxError on malformed input.
std::vector<Token> tokenize(std::string_view source);

std::string_view describe(Tok kind);

}  // namespace codeplay::dsl::detail
