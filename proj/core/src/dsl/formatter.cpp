#include "codeplay/dsl/formatter.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace codeplay::dsl {

namespace {

enum Prec : int {
  kOr = 1,
  kAnd = 2,
  kNot = 3,
  kCompare = 4,
  kAdd = 5,
  kMul = 6,
  kUnary = 7,
  kPostfix = 8,
  kAtom = 9,
};

int binary_prec(BinaryOp op) {
  switch (op) {
    case BinaryOp::logical_or: return kOr;
    case BinaryOp::logical_and: return kAnd;
    case BinaryOp::add:
    case BinaryOp::sub: return kAdd;
    case BinaryOp::mul:
    case BinaryOp::div:
    case BinaryOp::mod: return kMul;
    default: return kCompare;
  }
}

int prec(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::binary: return binary_prec(e.binary_op);
    case Expr::Kind::unary: return e.unary_op == UnaryOp::neg ? kUnary : kNot;
    case Expr::Kind::call:
    case Expr::Kind::index:
    case Expr::Kind::field: return kPostfix;
    default: return kAtom;
  }
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string wrap(const Expr& e, bool parens) {
  std::string s = format_expr(e);
  return parens ? "(" + s + ")" : s;
}

std::string join(const std::vector<Expr>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += format_expr(items[i]);
  }
  return out;
}

std::string pad(int depth) { return std::string(static_cast<std::size_t>(depth) * 4, ' '); }

void emit_block(std::ostringstream& out, const std::vector<Stmt>& stmts, int depth);

void emit(std::ostringstream& out, const Stmt& s, int depth) {
  const std::string ind = pad(depth);
  switch (s.kind) {
    case Stmt::Kind::assign:
      out << ind << s.targets[0] << " = " << format_expr(s.exprs[0]) << '\n';
      return;
    case Stmt::Kind::aug_assign:
      out << ind << s.targets[0] << ' ' << to_string(s.aug_op) << "= " << format_expr(s.exprs[0])
          << '\n';
      return;
    case Stmt::Kind::expr: out << ind << format_expr(s.exprs[0]) << '\n'; return;
    case Stmt::Kind::if_chain:
      for (std::size_t i = 0; i < s.exprs.size(); ++i) {
        out << (i == 0 ? ind + "if " : " elif ") << format_expr(s.exprs[i]) << " {\n";
        emit_block(out, s.blocks[i], depth + 1);
        out << ind << '}';
      }
      if (s.has_else) {
        out << " else {\n";
        emit_block(out, s.blocks.back(), depth + 1);
        out << ind << '}';
      }
      out << '\n';
      return;
    case Stmt::Kind::while_loop:
      out << ind << "while " << format_expr(s.exprs[0]) << " {\n";
      emit_block(out, s.blocks[0], depth + 1);
      out << ind << "}\n";
      return;
    case Stmt::Kind::for_loop:
      out << ind << "for " << s.targets[0];
      if (s.targets.size() > 1) out << ", " << s.targets[1];
      out << " in " << format_expr(s.exprs[0]) << " {\n";
      emit_block(out, s.blocks[0], depth + 1);
      out << ind << "}\n";
      return;
    case Stmt::Kind::return_value:
      out << ind << "return";
      if (!s.exprs.empty()) out << ' ' << format_expr(s.exprs[0]);
      out << '\n';
      return;
    case Stmt::Kind::break_loop: out << ind << "break\n"; return;
    case Stmt::Kind::continue_loop: out << ind << "continue\n"; return;
    case Stmt::Kind::pass: out << ind << "pass\n"; return;
  }
}

void emit_block(std::ostringstream& out, const std::vector<Stmt>& stmts, int depth) {
  for (const auto& s : stmts) emit(out, s, depth);
}

}  // namespace

std::string format_number(double value) {
  if (std::isfinite(value) && value == std::floor(value) && std::fabs(value) < 1e15) {
    return std::to_string(static_cast<long long>(value));
  }
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return ec == std::errc() ? std::string(buf.data(), ptr) : std::to_string(value);
}

std::string format_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::number: return e.text.empty() ? format_number(e.number) : e.text;
    case Expr::Kind::text: return quote(e.text);
    case Expr::Kind::boolean: return e.boolean ? "true" : "false";
    case Expr::Kind::none: return "none";
    case Expr::Kind::name: return e.text;
    case Expr::Kind::list: return "[" + join(e.children) + "]";
    case Expr::Kind::call: return e.text + "(" + join(e.children) + ")";
    case Expr::Kind::index:
      return wrap(e.children[0], prec(e.children[0]) < kPostfix) + "[" +
             format_expr(e.children[1]) + "]";
    case Expr::Kind::field:
      return wrap(e.children[0], prec(e.children[0]) < kPostfix) + "." + e.text;
    case Expr::Kind::unary:
      if (e.unary_op == UnaryOp::neg) return "-" + wrap(e.children[0], prec(e.children[0]) < kUnary);
      return "not " + wrap(e.children[0], prec(e.children[0]) < kNot);
    case Expr::Kind::binary: {
      const int p = binary_prec(e.binary_op);
      const bool compare = p == kCompare;
      const int lp = prec(e.children[0]);
      const int rp = prec(e.children[1]);
      return wrap(e.children[0], compare ? lp <= p : lp < p) + " " +
             std::string(to_string(e.binary_op)) + " " + wrap(e.children[1], rp <= p);
    }
  }
  return "";
}

std::string format_block(const std::vector<Stmt>& stmts, int depth) {
  std::ostringstream out;
  emit_block(out, stmts, depth);
  return out.str();
}

std::string format_function(const FunctionDef& f) {
  std::ostringstream out;
  if (f.trainable) out << "@trainable\n";
  if (f.entry) out << "@entry\n";
  out << "fn " << f.name << '(';
  for (std::size_t i = 0; i < f.params.size(); ++i) out << (i ? ", " : "") << f.params[i];
  out << ") {\n";
  if (f.docstring) {
    const char* delim = f.docstring->find("\"\"\"") == std::string::npos ? "\"\"\"" : "'''";
    out << pad(1) << delim << '\n';
    std::istringstream lines(*f.docstring);
    for (std::string line; std::getline(lines, line);) {
      if (line.empty()) out << '\n';
      else out << pad(1) << line << '\n';
    }
    out << pad(1) << delim << '\n';
  }
  emit_block(out, f.body, 1);
  out << "}\n";
  return out.str();
}

std::string format(const PolicyProgram& program) {
  std::string out;
  for (std::size_t i = 0; i < program.functions.size(); ++i) {
    if (i) out += '\n';
    out += format_function(program.functions[i]);
  }
  return out;
}

}  // namespace codeplay::dsl
