#include "lexer.hpp"

#include <cctype>
#include <charconv>
#include <unordered_map>

#include "codeplay/dsl/errors.hpp"

namespace codeplay::dsl::detail {

namespace {

const std::unordered_map<std::string_view, Tok>& keywords() {
  static const std::unordered_map<std::string_view, Tok> kKeywords{
      {"fn", Tok::kw_fn},         {"if", Tok::kw_if},       {"elif", Tok::kw_elif},
      {"else", Tok::kw_else},     {"while", Tok::kw_while}, {"for", Tok::kw_for},
      {"in", Tok::kw_in},         {"return", Tok::kw_return}, {"break", Tok::kw_break},
      {"continue", Tok::kw_continue}, {"pass", Tok::kw_pass}, {"and", Tok::kw_and},
      {"or", Tok::kw_or},         {"not", Tok::kw_not},     {"true", Tok::kw_true},
      {"false", Tok::kw_false},   {"none", Tok::kw_none},
  };
  return kKeywords;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n') {
        const SourceLoc loc = here();
        advance();
        if (nesting_ == 0 && !out_.empty() && out_.back().kind != Tok::newline)
          push(Tok::newline, "\n", loc);
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
        continue;
      }
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      if (c == '\\' && peek(1) == '\n') {  // explicit line continuation
        advance();
        advance();
        continue;
      }
      if (ident_start(c)) {
        lex_identifier();
      } else if (digit(c) || (c == '.' && digit(peek(1)))) {
        lex_number();
      } else if (c == '"' || c == '\'') {
        if (peek(1) == c && peek(2) == c) lex_docstring(c);
        else lex_string(c);
      } else {
        lex_punct();
      }
    }
    if (!out_.empty() && out_.back().kind != Tok::newline) push(Tok::newline, "\n", here());
    push(Tok::end, "", here());
    return std::move(out_);
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  SourceLoc here() const { return {line_, col_}; }
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void push(Tok kind, std::string text, SourceLoc loc, double number = 0.0) {
    out_.push_back(Token{kind, std::move(text), number, loc});
  }
  [[noreturn]] void fail(SourceLoc loc, const std::string& msg) const { throw SyntaxError(loc, msg); }

  void lex_identifier() {
    const SourceLoc loc = here();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
    const std::string_view word = src_.substr(start, pos_ - start);
    if (auto it = keywords().find(word); it != keywords().end()) push(it->second, std::string(word), loc);
    else push(Tok::identifier, std::string(word), loc);
  }

  void lex_number() {
    const SourceLoc loc = here();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && digit(src_[pos_])) advance();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      advance();
      while (pos_ < src_.size() && digit(src_[pos_])) advance();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      const char sign = peek(1);
      if (digit(sign) || ((sign == '+' || sign == '-') && digit(peek(2)))) {
        advance();
        if (sign == '+' || sign == '-') advance();
        while (pos_ < src_.size() && digit(src_[pos_])) advance();
      }
    }
    if (pos_ < src_.size() && ident_char(src_[pos_])) fail(here(), "malformed number literal");
    const std::string_view lexeme = src_.substr(start, pos_ - start);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), value);
    if (ec != std::errc() || ptr != lexeme.data() + lexeme.size())
      fail(loc, "malformed number literal '" + std::string(lexeme) + "'");
    push(Tok::number, std::string(lexeme), loc, value);
  }

  void lex_string(char quote) {
    const SourceLoc loc = here();
    advance();
    std::string value;
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') fail(loc, "unterminated string literal");
      const char c = src_[pos_];
      if (c == quote) {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        if (pos_ >= src_.size()) fail(loc, "unterminated string literal");
        const char e = src_[pos_];
        switch (e) {
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case '\\': value += '\\'; break;
          case '"': value += '"'; break;
          case '\'': value += '\''; break;
          default: fail(here(), std::string("unknown escape sequence \\") + e);
        }
        advance();
        continue;
      }
      value += c;
      advance();
    }
    push(Tok::text, std::move(value), loc);
  }

  void lex_docstring(char quote) {
    const SourceLoc loc = here();
    advance();
    advance();
    advance();
    const std::size_t start = pos_;
    while (true) {
      if (pos_ >= src_.size()) fail(loc, "unterminated docstring");
      if (src_[pos_] == quote && peek(1) == quote && peek(2) == quote) break;
      advance();
    }
    std::string raw(src_.substr(start, pos_ - start));
    advance();
    advance();
    advance();
    push(Tok::docstring, std::move(raw), loc);
  }

  void lex_punct() {
    const SourceLoc loc = here();
    const char c = src_[pos_];
    const char n = peek(1);
    auto two = [&](Tok kind, const char* text) {
      advance();
      advance();
      push(kind, text, loc);
    };
    auto one = [&](Tok kind) {
      advance();
      push(kind, std::string(1, c), loc);
    };
    switch (c) {
      case '(': ++nesting_; one(Tok::lparen); return;
      case ')': if (nesting_ > 0) --nesting_; one(Tok::rparen); return;
      case '[': ++nesting_; one(Tok::lbracket); return;
      case ']': if (nesting_ > 0) --nesting_; one(Tok::rbracket); return;
      case '{': one(Tok::lbrace); return;
      case '}': one(Tok::rbrace); return;
      case ',': one(Tok::comma); return;
      case '.': one(Tok::dot); return;
      case ';': one(Tok::semicolon); return;
      case '@': one(Tok::at); return;
      case '%': one(Tok::percent); return;
      case '+': if (n == '=') two(Tok::plus_assign, "+="); else one(Tok::plus); return;
      case '-': if (n == '=') two(Tok::minus_assign, "-="); else one(Tok::minus); return;
      case '*': if (n == '=') two(Tok::star_assign, "*="); else one(Tok::star); return;
      case '/': if (n == '=') two(Tok::slash_assign, "/="); else one(Tok::slash); return;
      case '<': if (n == '=') two(Tok::le, "<="); else one(Tok::lt); return;
      case '>': if (n == '=') two(Tok::ge, ">="); else one(Tok::gt); return;
      case '=': if (n == '=') two(Tok::eq, "=="); else one(Tok::assign); return;
      case '!':
        if (n == '=') {
          two(Tok::ne, "!=");
          return;
        }
        break;
      default: break;
    }
    if (static_cast<unsigned char>(c) >= 0x80) fail(loc, "non-ASCII character outside a string literal");
    fail(loc, std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  int nesting_ = 0;
  std::vector<Token> out_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

std::string_view describe(Tok kind) {
  switch (kind) {
    case Tok::identifier: return "identifier";
    case Tok::number: return "number";
    case Tok::text: return "string";
    case Tok::docstring: return "docstring";
    case Tok::newline: return "end of line";
    case Tok::end: return "end of input";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::comma: return "','";
    case Tok::dot: return "'.'";
    case Tok::semicolon: return "';'";
    case Tok::at: return "'@'";
    case Tok::assign: return "'='";
    case Tok::plus_assign: return "'+='";
    case Tok::minus_assign: return "'-='";
    case Tok::star_assign: return "'*='";
    case Tok::slash_assign: return "'/='";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
    case Tok::slash: return "'/'";
    case Tok::percent: return "'%'";
    case Tok::lt: return "'<'";
    case Tok::le: return "'<='";
    case Tok::gt: return "'>'";
    case Tok::ge: return "'>='";
    case Tok::eq: return "'=='";
    case Tok::ne: return "'!='";
    case Tok::kw_fn: return "'fn'";
    case Tok::kw_if: return "'if'";
    case Tok::kw_elif: return "'elif'";
    case Tok::kw_else: return "'else'";
    case Tok::kw_while: return "'while'";
    case Tok::kw_for: return "'for'";
    case Tok::kw_in: return "'in'";
    case Tok::kw_return: return "'return'";
    case Tok::kw_break: return "'break'";
    case Tok::kw_continue: return "'continue'";
    case Tok::kw_pass: return "'pass'";
    case Tok::kw_and: return "'and'";
    case Tok::kw_or: return "'or'";
    case Tok::kw_not: return "'not'";
    case Tok::kw_true: return "'true'";
    case Tok::kw_false: return "'false'";
    case Tok::kw_none: return "'none'";
  }
  return "token";
}

}  // namespace codeplay::dsl::detail
