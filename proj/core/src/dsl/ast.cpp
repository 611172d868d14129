#include "codeplay/dsl/ast.hpp"

#include <algorithm>

namespace codeplay::dsl {

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::add: return "+";
    case BinaryOp::sub: return "-";
    case BinaryOp::mul: return "*";
    case BinaryOp::div: return "/";
    case BinaryOp::mod: return "%";
    case BinaryOp::lt: return "<";
    case BinaryOp::le: return "<=";
    case BinaryOp::gt: return ">";
    case BinaryOp::ge: return ">=";
    case BinaryOp::eq: return "==";
    case BinaryOp::ne: return "!=";
    case BinaryOp::in: return "in";
    case BinaryOp::not_in: return "not in";
    case BinaryOp::logical_and: return "and";
    case BinaryOp::logical_or: return "or";
  }
  return "?";
}

const FunctionDef* PolicyProgram::find(std::string_view name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

int PolicyProgram::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < functions.size(); ++i)
    if (functions[i].name == name) return static_cast<int>(i);
  return -1;
}

std::vector<std::string> PolicyProgram::trainable_names() const {
  std::vector<std::string> names;
  for (const auto& f : functions)
    if (f.trainable) names.push_back(f.name);
  return names;
}

namespace {

template <typename T>
bool all_equal(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(),
                    [](const T& x, const T& y) { return structurally_equal(x, y); });
}

bool blocks_equal(const std::vector<std::vector<Stmt>>& a, const std::vector<std::vector<Stmt>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!all_equal(a[i], b[i])) return false;
  return true;
}

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::number: return a.number == b.number;
    case Expr::Kind::boolean: return a.boolean == b.boolean;
    case Expr::Kind::none: return true;
    case Expr::Kind::text:
    case Expr::Kind::name: return a.text == b.text;
    case Expr::Kind::unary: return a.unary_op == b.unary_op && all_equal(a.children, b.children);
    case Expr::Kind::binary: return a.binary_op == b.binary_op && all_equal(a.children, b.children);
    case Expr::Kind::call:
    case Expr::Kind::field: return a.text == b.text && all_equal(a.children, b.children);
    case Expr::Kind::list:
    case Expr::Kind::index: return all_equal(a.children, b.children);
  }
  return false;
}

bool structurally_equal(const Stmt& a, const Stmt& b) {
  return a.kind == b.kind && a.targets == b.targets &&
         (a.kind != Stmt::Kind::aug_assign || a.aug_op == b.aug_op) && a.has_else == b.has_else &&
         all_equal(a.exprs, b.exprs) && blocks_equal(a.blocks, b.blocks);
}

bool structurally_equal(const FunctionDef& a, const FunctionDef& b) {
  return a.name == b.name && a.params == b.params && a.docstring == b.docstring &&
         a.trainable == b.trainable && a.entry == b.entry && all_equal(a.body, b.body);
}

bool structurally_equal(const PolicyProgram& a, const PolicyProgram& b) {
  return a.entry == b.entry && all_equal(a.functions, b.functions);
}

}  // namespace codeplay::dsl
