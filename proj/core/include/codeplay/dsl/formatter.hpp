#pragma once

#include <string>
#include <vector>

#include "codeplay/dsl/ast.hpp"

namespace codeplay::dsl {

/// Canonical source: 4-space indentation, one blank line between functions,
/// minimal parentheses, comments dropped. parse(format(p)) is structurally
/// equal to p, and format is deterministic.
std::string format(const PolicyProgram& program);
std::string format_function(const FunctionDef& function);
std::string format_expr(const Expr& expr);

/// Statements at the given indentation depth (4 spaces per level), one per line.
std::string format_block(const std::vector<Stmt>& stmts, int depth = 0);

/// Shortest round-trip decimal, integral values without a fractional part.
std::string format_number(double value);

}  // namespace codeplay::dsl
