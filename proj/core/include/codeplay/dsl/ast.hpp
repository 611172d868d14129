#pragma once

#include <optional>
#include <string>
#include <vector>

namespace codeplay::dsl {

struct SourceLoc {
  int line = 0;
  int col = 0;
};

enum class BinaryOp { add, sub, mul, div, mod, lt, le, gt, ge, eq, ne, in, not_in, logical_and, logical_or };
enum class UnaryOp { neg, logical_not };

std::string_view to_string(BinaryOp op);

enum class Builtin {
  abs, min, max, floor, len, starts_with, random_choice, random_uniform, get, range
};

struct Expr {
  enum class Kind { number, text, boolean, none, list, name, unary, binary, call, index, field };

  Kind kind = Kind::none;
  SourceLoc loc;
  double number = 0.0;
  bool boolean = false;
  /// Number lexeme, string literal contents, identifier, callee or field name.
  std::string text;
  UnaryOp unary_op = UnaryOp::neg;
  BinaryOp binary_op = BinaryOp::add;
  /// Operands, list elements, call arguments, or {object, key} for index.
  std::vector<Expr> children;

  // Filled in by semantic analysis.
  int slot = -1;
  int callee = -1;
  std::optional<Builtin> builtin;
};

struct Stmt {
  enum class Kind { assign, aug_assign, expr, if_chain, while_loop, for_loop, return_value, break_loop, continue_loop, pass };

  Kind kind = Kind::pass;
  SourceLoc loc;
  /// Assignment / loop targets. `targets.size() == 2` for `for key, value in ...`.
  std::vector<std::string> targets;
  std::vector<int> target_slots;
  BinaryOp aug_op = BinaryOp::add;
  /// Assigned value, expression, loop condition or iterable, return value;
  /// for if chains one condition per `if`/`elif` branch.
  std::vector<Expr> exprs;
  /// if chains: one block per condition plus an optional trailing else block.
  std::vector<std::vector<Stmt>> blocks;
  bool has_else = false;
};

struct FunctionDef {
  std::string name;
  std::vector<std::string> params;
  std::optional<std::string> docstring;
  std::vector<Stmt> body;
  bool trainable = false;
  bool entry = false;
  SourceLoc loc;

  // Filled in by semantic analysis.
  std::vector<std::string> slot_names;
};

/// A parsed, analyzed policy program. Immutable once returned by parse();
/// safe to share across threads.
struct PolicyProgram {
  std::vector<FunctionDef> functions;
  std::string entry;

  const FunctionDef* find(std::string_view name) const;
  int index_of(std::string_view name) const;
  std::vector<std::string> trainable_names() const;
};

/// Structural equality: ignores source locations and analysis results.
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Stmt& a, const Stmt& b);
bool structurally_equal(const FunctionDef& a, const FunctionDef& b);
bool structurally_equal(const PolicyProgram& a, const PolicyProgram& b);

}  // namespace codeplay::dsl
