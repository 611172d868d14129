#include "codeplay/dsl/metrics.hpp"

#include <algorithm>
#include <sstream>

#include "codeplay/dsl/formatter.hpp"

namespace codeplay::dsl {

namespace {

int expr_branches(const Expr& e) {
  int n = e.kind == Expr::Kind::binary &&
                  (e.binary_op == BinaryOp::logical_and || e.binary_op == BinaryOp::logical_or)
              ? 1
              : 0;
  for (const auto& c : e.children) n += expr_branches(c);
  return n;
}

struct Walk {
  int branches = 0;
  int max_nesting = 0;

  void block(const std::vector<Stmt>& stmts, int if_depth) {
    for (const auto& s : stmts) stmt(s, if_depth);
  }

  void stmt(const Stmt& s, int if_depth) {
    for (const auto& e : s.exprs) branches += expr_branches(e);
    switch (s.kind) {
      case Stmt::Kind::if_chain:
        branches += static_cast<int>(s.exprs.size());
        max_nesting = std::max(max_nesting, if_depth + 1);
        for (const auto& b : s.blocks) block(b, if_depth + 1);
        return;
      case Stmt::Kind::while_loop:
      case Stmt::Kind::for_loop:
        branches += 1;
        block(s.blocks[0], if_depth);
        return;
      default: return;
    }
  }
};

int count_loc(const std::string& text) {
  int loc = 0;
  std::istringstream in(text);
  bool in_doc = false;
  for (std::string line; std::getline(in, line);) {
    const auto first = line.find_first_not_of(' ');
    if (first == std::string::npos) continue;
    const std::string t = line.substr(first);
    if (t == "\"\"\"" || t == "'''") {
      in_doc = !in_doc;
      continue;
    }
    if (!in_doc) ++loc;
  }
  return loc;
}

}  // namespace

CodeMetrics code_metrics(const FunctionDef& function) {
  Walk w;
  w.block(function.body, 0);
  return CodeMetrics{count_loc(format_function(function)), 1 + w.branches, w.max_nesting};
}

CodeMetrics code_metrics(const PolicyProgram& program) {
  CodeMetrics total;
  for (const auto& f : program.functions) {
    const CodeMetrics m = code_metrics(f);
    total.loc += m.loc;
    total.cyclomatic += m.cyclomatic;
    total.max_if_nesting = std::max(total.max_if_nesting, m.max_if_nesting);
  }
  return total;
}

std::string render_metrics_table(const std::vector<MetricsRow>& rows) {
  std::size_t width = 5;
  for (const auto& r : rows) width = std::max(width, r.stage.size());
  std::ostringstream out;
  auto cell = [&](const std::string& s, std::size_t w) {
    out << s << std::string(w > s.size() ? w - s.size() : 0, ' ');
  };
  cell("Stage", width + 2);
  cell("LOC", 6);
  cell("Comp.", 7);
  out << "N. Ifs\n";
  for (const auto& r : rows) {
    cell(r.stage, width + 2);
    if (!r.error.empty()) {
      out << "error: " << r.error << '\n';
      continue;
    }
    cell(std::to_string(r.metrics.loc), 6);
    cell(std::to_string(r.metrics.cyclomatic), 7);
    out << r.metrics.max_if_nesting << '\n';
  }
  return out.str();
}

}  // namespace codeplay::dsl
