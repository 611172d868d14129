#pragma once

#include <string>
#include <vector>

#include "codeplay/dsl/ast.hpp"

namespace codeplay::dsl {

struct CodeMetrics {
  /// Non-blank lines of the formatted program, docstrings excluded.
  int loc = 0;
  /// Sum over functions of 1 + branch points (if, elif, while, for, and, or).
  int cyclomatic = 0;
  /// Deepest chain of lexically nested if statements; elif stays at its if's level.
  int max_if_nesting = 0;

  friend bool operator==(const CodeMetrics&, const CodeMetrics&) = default;
};

CodeMetrics code_metrics(const PolicyProgram& program);
CodeMetrics code_metrics(const FunctionDef& function);

struct MetricsRow {
  std::string stage;
  CodeMetrics metrics;
  /// Non-empty when the row could not be computed; replaces the numbers.
  std::string error;
};

/// Plain-text table with columns Stage, LOC, Comp., N. Ifs.
std::string render_metrics_table(const std::vector<MetricsRow>& rows);

}  // namespace codeplay::dsl
