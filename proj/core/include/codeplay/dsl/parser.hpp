#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codeplay/dsl/ast.hpp"
#include "codeplay/dsl/errors.hpp"

namespace codeplay::dsl {

/// Parses and analyzes a complete policy program.
///
/// Grammar sketch:
///
///     @trainable
///     fn name(a, b) {
///         """docstring"""
///         x = a + 1
///         if x > b { return x } elif ... { } else { }
///         while cond { ... }
///         for key, value in obs { ... }
///         return none
///     }
///
///     @entry
///     fn policy(obs) { return name(obs, 2) }
///
/// Statements end at a newline or `;`. Newlines inside () and [] are ignored.
/// Throws SyntaxError for malformed input and for statically detectable
/// semantic errors (undeclared identifiers, unknown callees, arity mismatch,
/// recursion, missing or duplicate entry).
PolicyProgram parse(std::string_view source);

/// A replacement function body: an optional leading docstring plus statements.
struct ParsedBody {
  std::optional<std::string> docstring;
  std::vector<Stmt> stmts;
};

/// Parses statements without surrounding braces, as an optimizer would
/// return them. Names are not resolved here; see analyze().
ParsedBody parse_body(std::string_view source);

/// Parses a single `fn` definition, decorators optional.
FunctionDef parse_function(std::string_view source);

/// Resolves names and re-checks every static rule. Idempotent. parse()
/// already calls it; call it again after splicing new bodies in.
void analyze(PolicyProgram& program);

/// True when `name` is a builtin function of the language.
bool is_builtin(std::string_view name);

}  // namespace codeplay::dsl
