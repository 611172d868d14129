#include "codeplay/dsl/parser.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "lexer.hpp"

namespace codeplay::dsl {

using detail::Tok;
using detail::Token;

namespace {

struct BuiltinSpec {
  Builtin id;
  int min_args;
  int max_args;  // -1: unbounded
};

const std::map<std::string, BuiltinSpec, std::less<>>& builtin_table() {
  static const std::map<std::string, BuiltinSpec, std::less<>> kTable{
      {"abs", {Builtin::abs, 1, 1}},
      {"min", {Builtin::min, 1, -1}},
      {"max", {Builtin::max, 1, -1}},
      {"floor", {Builtin::floor, 1, 1}},
      {"len", {Builtin::len, 1, 1}},
      {"starts_with", {Builtin::starts_with, 2, 2}},
      {"random_choice", {Builtin::random_choice, 1, 1}},
      {"random_uniform", {Builtin::random_uniform, 0, 2}},
      {"get", {Builtin::get, 2, 3}},
      {"range", {Builtin::range, 1, 2}},
  };
  return kTable;
}

std::string trim_right(std::string s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
  return s;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

// Drops leading/trailing blank lines and the common indentation.
std::string clean_docstring(const std::string& raw) {
  std::vector<std::string> lines;
  std::istringstream in(raw);
  for (std::string line; std::getline(in, line);) lines.push_back(trim_right(line));
  if (!raw.empty() && raw.back() == '\n') lines.emplace_back();
  while (!lines.empty() && blank(lines.front())) lines.erase(lines.begin());
  while (!lines.empty() && blank(lines.back())) lines.pop_back();
  std::size_t indent = std::string::npos;
  for (const auto& l : lines)
    if (!blank(l)) indent = std::min(indent, l.find_first_not_of(" \t"));
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out += '\n';
    if (!blank(lines[i])) out += lines[i].substr(indent);
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view source) : toks_(detail::tokenize(source)) {}

  PolicyProgram program() {
    PolicyProgram prog;
    skip_newlines();
    while (!at(Tok::end)) {
      prog.functions.push_back(function());
      skip_newlines();
    }
    return prog;
  }

  FunctionDef single_function() {
    skip_newlines();
    FunctionDef f = function();
    skip_newlines();
    expect(Tok::end, "after the function definition");
    return f;
  }

  ParsedBody body() {
    ParsedBody out;
    skip_newlines();
    if (at(Tok::docstring)) {
      out.docstring = clean_docstring(next().text);
      terminate_simple();
    }
    while (true) {
      skip_separators();
      if (at(Tok::end)) break;
      if (at(Tok::rbrace)) fail(peek().loc, "unexpected '}'");
      out.stmts.push_back(statement());
    }
    return out;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok kind) const { return peek().kind == kind; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool accept(Tok kind) {
    if (!at(kind)) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(SourceLoc loc, const std::string& msg) const { throw SyntaxError(loc, msg); }
  [[noreturn]] void unexpected(const std::string& context) const {
    const Token& t = peek();
    std::string found(detail::describe(t.kind));
    if (t.kind == Tok::identifier || t.kind == Tok::number) found += " '" + t.text + "'";
    fail(t.loc, "unexpected " + found + " " + context);
  }
  const Token& expect(Tok kind, const std::string& context) {
    if (!at(kind))
      unexpected("(expected " + std::string(detail::describe(kind)) + " " + context + ")");
    return next();
  }
  void skip_newlines() {
    while (at(Tok::newline)) next();
  }
  void skip_separators() {
    while (at(Tok::newline) || at(Tok::semicolon)) next();
  }

  FunctionDef function() {
    FunctionDef f;
    while (at(Tok::at)) {
      next();
      const Token& name = expect(Tok::identifier, "after '@'");
      if (name.text == "trainable") f.trainable = true;
      else if (name.text == "entry") f.entry = true;
      else fail(name.loc, "unknown decorator '@" + name.text + "' (expected @trainable or @entry)");
      skip_newlines();
    }
    if (at(Tok::identifier) && peek().text == "def")
      fail(peek().loc, "functions are declared with 'fn', not 'def'");
    f.loc = expect(Tok::kw_fn, "at the start of a function definition").loc;
    f.name = expect(Tok::identifier, "after 'fn'").text;
    expect(Tok::lparen, "after the function name");
    if (!at(Tok::rparen)) {
      do {
        if (at(Tok::rparen)) break;
        f.params.push_back(expect(Tok::identifier, "in the parameter list").text);
      } while (accept(Tok::comma));
    }
    expect(Tok::rparen, "to close the parameter list");
    expect(Tok::lbrace, "to open the function body");
    skip_separators();
    if (at(Tok::docstring)) {
      f.docstring = clean_docstring(next().text);
      if (!at(Tok::rbrace)) terminate_simple();
    }
    f.body = block_tail();
    if (f.body.empty()) {
      Stmt ret;
      ret.kind = Stmt::Kind::return_value;
      ret.loc = f.loc;
      Expr none;
      none.kind = Expr::Kind::none;
      none.loc = f.loc;
      ret.exprs.push_back(std::move(none));
      f.body.push_back(std::move(ret));
    }
    return f;
  }

  // Statements up to and including the closing '}'.
  std::vector<Stmt> block_tail() {
    std::vector<Stmt> stmts;
    while (true) {
      skip_separators();
      if (accept(Tok::rbrace)) return stmts;
      if (at(Tok::end)) unexpected("(missing '}')");
      stmts.push_back(statement());
    }
  }

  std::vector<Stmt> block(const std::string& context) {
    expect(Tok::lbrace, context);
    return block_tail();
  }

  void terminate_simple() {
    if (at(Tok::newline) || at(Tok::semicolon)) {
      next();
      return;
    }
    if (at(Tok::rbrace) || at(Tok::end)) return;
    unexpected("(expected end of statement)");
  }

  Stmt statement() {
    Stmt s;
    s.loc = peek().loc;
    switch (peek().kind) {
      case Tok::kw_if: {
        s.kind = Stmt::Kind::if_chain;
        next();
        s.exprs.push_back(expression());
        s.blocks.push_back(block("after the if condition"));
        while (true) {
          const std::size_t save = pos_;
          skip_newlines();
          if (accept(Tok::kw_elif)) {
            s.exprs.push_back(expression());
            s.blocks.push_back(block("after the elif condition"));
          } else if (accept(Tok::kw_else)) {
            if (at(Tok::kw_if)) fail(peek().loc, "write 'elif' instead of 'else if'");
            s.blocks.push_back(block("after 'else'"));
            s.has_else = true;
            break;
          } else {
            pos_ = save;
            break;
          }
        }
        return s;
      }
      case Tok::kw_while:
        s.kind = Stmt::Kind::while_loop;
        next();
        s.exprs.push_back(expression());
        s.blocks.push_back(block("after the while condition"));
        return s;
      case Tok::kw_for:
        s.kind = Stmt::Kind::for_loop;
        next();
        s.targets.push_back(expect(Tok::identifier, "after 'for'").text);
        if (accept(Tok::comma)) s.targets.push_back(expect(Tok::identifier, "after ','").text);
        expect(Tok::kw_in, "in the for statement");
        s.exprs.push_back(expression());
        s.blocks.push_back(block("after the for iterable"));
        return s;
      case Tok::kw_return:
        s.kind = Stmt::Kind::return_value;
        next();
        if (at(Tok::newline) || at(Tok::semicolon) || at(Tok::rbrace) || at(Tok::end)) {
          Expr none;
          none.kind = Expr::Kind::none;
          none.loc = s.loc;
          s.exprs.push_back(std::move(none));
        } else {
          s.exprs.push_back(expression());
        }
        terminate_simple();
        return s;
      case Tok::kw_break:
      case Tok::kw_continue:
      case Tok::kw_pass:
        s.kind = at(Tok::kw_break)      ? Stmt::Kind::break_loop
                 : at(Tok::kw_continue) ? Stmt::Kind::continue_loop
                                        : Stmt::Kind::pass;
        next();
        terminate_simple();
        return s;
      default: break;
    }
    Expr e = expression();
    std::optional<BinaryOp> aug;
    switch (peek().kind) {
      case Tok::assign: break;
      case Tok::plus_assign: aug = BinaryOp::add; break;
      case Tok::minus_assign: aug = BinaryOp::sub; break;
      case Tok::star_assign: aug = BinaryOp::mul; break;
      case Tok::slash_assign: aug = BinaryOp::div; break;
      default:
        s.kind = Stmt::Kind::expr;
        s.exprs.push_back(std::move(e));
        terminate_simple();
        return s;
    }
    const Token& op = next();
    if (e.kind != Expr::Kind::name)
      fail(op.loc, "only plain variable names can be assigned to");
    s.kind = aug ? Stmt::Kind::aug_assign : Stmt::Kind::assign;
    if (aug) s.aug_op = *aug;
    s.targets.push_back(e.text);
    s.exprs.push_back(expression());
    terminate_simple();
    return s;
  }

  Expr make(Expr::Kind kind, SourceLoc loc) {
    Expr e;
    e.kind = kind;
    e.loc = loc;
    return e;
  }

  Expr binary(BinaryOp op, Expr lhs, Expr rhs, SourceLoc loc) {
    Expr e = make(Expr::Kind::binary, loc);
    e.binary_op = op;
    e.children.push_back(std::move(lhs));
    e.children.push_back(std::move(rhs));
    return e;
  }

  Expr expression() { return or_expr(); }

  Expr or_expr() {
    Expr lhs = and_expr();
    while (at(Tok::kw_or)) {
      const SourceLoc loc = next().loc;
      lhs = binary(BinaryOp::logical_or, std::move(lhs), and_expr(), loc);
    }
    return lhs;
  }

  Expr and_expr() {
    Expr lhs = not_expr();
    while (at(Tok::kw_and)) {
      const SourceLoc loc = next().loc;
      lhs = binary(BinaryOp::logical_and, std::move(lhs), not_expr(), loc);
    }
    return lhs;
  }

  Expr not_expr() {
    if (at(Tok::kw_not)) {
      Expr e = make(Expr::Kind::unary, next().loc);
      e.unary_op = UnaryOp::logical_not;
      e.children.push_back(not_expr());
      return e;
    }
    return comparison();
  }

  std::optional<BinaryOp> comparison_op() {
    switch (peek().kind) {
      case Tok::lt: return BinaryOp::lt;
      case Tok::le: return BinaryOp::le;
      case Tok::gt: return BinaryOp::gt;
      case Tok::ge: return BinaryOp::ge;
      case Tok::eq: return BinaryOp::eq;
      case Tok::ne: return BinaryOp::ne;
      case Tok::kw_in: return BinaryOp::in;
      case Tok::kw_not:
        if (peek(1).kind == Tok::kw_in) return BinaryOp::not_in;
        return std::nullopt;
      default: return std::nullopt;
    }
  }

  Expr comparison() {
    Expr lhs = additive();
    if (at(Tok::identifier) && (peek().text == "is"))
      fail(peek().loc, "use '==' or '!=' instead of 'is'");
    const auto op = comparison_op();
    if (!op) return lhs;
    const SourceLoc loc = next().loc;
    if (*op == BinaryOp::not_in) next();
    Expr rhs = additive();
    if (comparison_op())
      fail(peek().loc, "chained comparisons are not supported; combine them with 'and'");
    return binary(*op, std::move(lhs), std::move(rhs), loc);
  }

  Expr additive() {
    Expr lhs = multiplicative();
    while (at(Tok::plus) || at(Tok::minus)) {
      const Token& t = next();
      lhs = binary(t.kind == Tok::plus ? BinaryOp::add : BinaryOp::sub, std::move(lhs),
                   multiplicative(), t.loc);
    }
    return lhs;
  }

  Expr multiplicative() {
    Expr lhs = unary();
    while (at(Tok::star) || at(Tok::slash) || at(Tok::percent)) {
      const Token& t = next();
      const BinaryOp op = t.kind == Tok::star    ? BinaryOp::mul
                          : t.kind == Tok::slash ? BinaryOp::div
                                                 : BinaryOp::mod;
      lhs = binary(op, std::move(lhs), unary(), t.loc);
    }
    return lhs;
  }

  Expr unary() {
    if (at(Tok::minus)) {
      Expr e = make(Expr::Kind::unary, next().loc);
      e.unary_op = UnaryOp::neg;
      e.children.push_back(unary());
      return e;
    }
    return postfix();
  }

  Expr postfix() {
    Expr e = primary();
    while (true) {
      if (at(Tok::lparen)) {
        if (e.kind == Expr::Kind::field)
          fail(peek().loc, "method calls are not supported; use get(container, key, default)");
        if (e.kind != Expr::Kind::name) fail(peek().loc, "only named functions can be called");
        next();
        Expr call = make(Expr::Kind::call, e.loc);
        call.text = e.text;
        call.children = arguments(Tok::rparen);
        e = std::move(call);
      } else if (at(Tok::lbracket)) {
        const SourceLoc loc = next().loc;
        Expr index = make(Expr::Kind::index, loc);
        index.children.push_back(std::move(e));
        index.children.push_back(expression());
        expect(Tok::rbracket, "to close the index");
        e = std::move(index);
      } else if (at(Tok::dot)) {
        const SourceLoc loc = next().loc;
        Expr field = make(Expr::Kind::field, loc);
        field.text = expect(Tok::identifier, "after '.'").text;
        field.children.push_back(std::move(e));
        e = std::move(field);
      } else {
        return e;
      }
    }
  }

  std::vector<Expr> arguments(Tok close) {
    std::vector<Expr> args;
    while (!at(close)) {
      args.push_back(expression());
      if (!accept(Tok::comma)) break;
    }
    expect(close, close == Tok::rparen ? "to close the argument list" : "to close the list");
    return args;
  }

  Expr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number: {
        next();
        Expr e = make(Expr::Kind::number, t.loc);
        e.number = t.number;
        e.text = t.text;
        return e;
      }
      case Tok::text: {
        next();
        Expr e = make(Expr::Kind::text, t.loc);
        e.text = t.text;
        return e;
      }
      case Tok::kw_true:
      case Tok::kw_false: {
        next();
        Expr e = make(Expr::Kind::boolean, t.loc);
        e.boolean = t.kind == Tok::kw_true;
        return e;
      }
      case Tok::kw_none:
        next();
        return make(Expr::Kind::none, t.loc);
      case Tok::identifier: {
        next();
        Expr e = make(Expr::Kind::name, t.loc);
        e.text = t.text;
        return e;
      }
      case Tok::lbracket: {
        next();
        Expr e = make(Expr::Kind::list, t.loc);
        e.children = arguments(Tok::rbracket);
        return e;
      }
      case Tok::lparen: {
        next();
        Expr e = expression();
        expect(Tok::rparen, "to close the parenthesis");
        return e;
      }
      case Tok::docstring:
        fail(t.loc, "a docstring may only open a function body");
      default:
        unexpected("(expected an expression)");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Semantic analysis

class Analyzer {
 public:
  Analyzer(PolicyProgram& program) : prog_(program) {}

  void run() {
    std::set<std::string> names;
    int entries = 0;
    for (const auto& f : prog_.functions) {
      if (is_builtin(f.name)) fail(f.loc, "function name '" + f.name + "' shadows a builtin");
      if (!names.insert(f.name).second) fail(f.loc, "duplicate function '" + f.name + "'");
      if (f.entry) ++entries;
    }
    if (prog_.functions.empty()) fail({1, 1}, "program defines no functions");
    if (entries == 0) fail({1, 1}, "no function is marked @entry");
    for (const auto& f : prog_.functions)
      if (f.entry && entries > 1) fail(f.loc, "more than one function is marked @entry");
    for (const auto& f : prog_.functions)
      if (f.entry) prog_.entry = f.name;

    calls_.assign(prog_.functions.size(), {});
    for (std::size_t i = 0; i < prog_.functions.size(); ++i) {
      current_ = static_cast<int>(i);
      function(prog_.functions[i]);
    }
    check_recursion();
  }

 private:
  [[noreturn]] void fail(SourceLoc loc, const std::string& msg) const { throw SyntaxError(loc, msg); }

  bool is_function(const std::string& name) const { return prog_.index_of(name) >= 0; }

  void declare(FunctionDef& f, const std::string& name, SourceLoc loc) {
    if (is_builtin(name)) fail(loc, "cannot assign to builtin '" + name + "'");
    if (is_function(name)) fail(loc, "cannot assign to function '" + name + "'");
    if (std::find(f.slot_names.begin(), f.slot_names.end(), name) == f.slot_names.end())
      f.slot_names.push_back(name);
  }

  void collect(FunctionDef& f, const std::vector<Stmt>& stmts) {
    for (const auto& s : stmts) {
      if (s.kind == Stmt::Kind::assign || s.kind == Stmt::Kind::aug_assign ||
          s.kind == Stmt::Kind::for_loop)
        for (const auto& t : s.targets) declare(f, t, s.loc);
      for (const auto& b : s.blocks) collect(f, b);
    }
  }

  int slot_of(const FunctionDef& f, const std::string& name) const {
    auto it = std::find(f.slot_names.begin(), f.slot_names.end(), name);
    return it == f.slot_names.end() ? -1 : static_cast<int>(it - f.slot_names.begin());
  }

  void function(FunctionDef& f) {
    f.slot_names.clear();
    for (const auto& p : f.params) {
      if (std::find(f.slot_names.begin(), f.slot_names.end(), p) != f.slot_names.end())
        fail(f.loc, "duplicate parameter '" + p + "' in " + f.name);
      declare(f, p, f.loc);
    }
    collect(f, f.body);
    block(f, f.body, 0);
  }

  void block(const FunctionDef& f, std::vector<Stmt>& stmts, int loop_depth) {
    for (auto& s : stmts) statement(f, s, loop_depth);
  }

  void statement(const FunctionDef& f, Stmt& s, int loop_depth) {
    s.target_slots.clear();
    for (const auto& t : s.targets) s.target_slots.push_back(slot_of(f, t));
    for (auto& e : s.exprs) expr(f, e);
    const bool loop = s.kind == Stmt::Kind::while_loop || s.kind == Stmt::Kind::for_loop;
    for (auto& b : s.blocks) block(f, b, loop_depth + (loop ? 1 : 0));
    if ((s.kind == Stmt::Kind::break_loop || s.kind == Stmt::Kind::continue_loop) && loop_depth == 0)
      fail(s.loc, std::string(s.kind == Stmt::Kind::break_loop ? "'break'" : "'continue'") +
                      " outside a loop");
  }

  void expr(const FunctionDef& f, Expr& e) {
    for (auto& c : e.children) expr(f, c);
    if (e.kind == Expr::Kind::name) {
      e.slot = slot_of(f, e.text);
      if (e.slot < 0) {
        if (is_function(e.text) || is_builtin(e.text))
          fail(e.loc, "'" + e.text + "' is a function; call it as " + e.text + "(...)");
        fail(e.loc, "undeclared identifier '" + e.text + "'");
      }
    } else if (e.kind == Expr::Kind::call) {
      const int argc = static_cast<int>(e.children.size());
      e.builtin.reset();
      e.callee = -1;
      auto& table = builtin_table();
      if (auto it = table.find(e.text); it != table.end()) {
        const auto& sig = it->second;
        if (argc < sig.min_args || (sig.max_args >= 0 && argc > sig.max_args) ||
            (sig.id == Builtin::random_uniform && argc == 1))
          fail(e.loc, "wrong number of arguments to builtin '" + e.text + "'");
        e.builtin = sig.id;
      } else if (const int idx = prog_.index_of(e.text); idx >= 0) {
        const auto& callee = prog_.functions[static_cast<std::size_t>(idx)];
        if (argc != static_cast<int>(callee.params.size()))
          fail(e.loc, "'" + e.text + "' takes " + std::to_string(callee.params.size()) +
                          " argument(s), got " + std::to_string(argc));
        e.callee = idx;
        calls_[static_cast<std::size_t>(current_)].insert(idx);
      } else {
        fail(e.loc, "call to undeclared function '" + e.text + "'");
      }
    }
  }

  void check_recursion() const {
    // 0 = unvisited, 1 = on stack, 2 = done
    std::vector<int> state(prog_.functions.size(), 0);
    std::function<void(int)> visit = [&](int i) {
      state[static_cast<std::size_t>(i)] = 1;
      for (int j : calls_[static_cast<std::size_t>(i)]) {
        const int st = state[static_cast<std::size_t>(j)];
        if (st == 1) {
          const auto& f = prog_.functions[static_cast<std::size_t>(i)];
          fail(f.loc, "recursion is not supported ('" + f.name + "' calls '" +
                          prog_.functions[static_cast<std::size_t>(j)].name + "')");
        }
        if (st == 0) visit(j);
      }
      state[static_cast<std::size_t>(i)] = 2;
    };
    for (std::size_t i = 0; i < prog_.functions.size(); ++i)
      if (state[i] == 0) visit(static_cast<int>(i));
  }

  PolicyProgram& prog_;
  std::vector<std::set<int>> calls_;
  int current_ = 0;
};

}  // namespace

bool is_builtin(std::string_view name) { return builtin_table().count(name) != 0; }

PolicyProgram parse(std::string_view source) {
  PolicyProgram prog = Parser(source).program();
  analyze(prog);
  return prog;
}

ParsedBody parse_body(std::string_view source) { return Parser(source).body(); }

FunctionDef parse_function(std::string_view source) { return Parser(source).single_function(); }

void analyze(PolicyProgram& program) { Analyzer(program).run(); }

}  // namespace codeplay::dsl
