#include "codeplay/trace/backward.hpp"

#include <algorithm>

namespace codeplay::trace {

namespace {

// Marks `seeds` and all of their ancestors.
std::vector<char> ancestors(const TraceGraph& graph, const std::vector<int>& seeds) {
  std::vector<char> mark(graph.size() + 1, 0);
  std::vector<int> stack(seeds.begin(), seeds.end());
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (mark[static_cast<std::size_t>(id)]) continue;
    mark[static_cast<std::size_t>(id)] = 1;
    for (int in : graph.node(id).inputs)
      if (!mark[static_cast<std::size_t>(in)]) stack.push_back(in);
  }
  return mark;
}

}  // namespace

std::vector<FeedbackBinding> backward(const TraceGraph& graph, int target,
                                      const std::string& feedback) {
  graph.node(target);
  const std::vector<char> reaches_target = ancestors(graph, {target});

  std::vector<FeedbackBinding> out;
  for (const TraceNode& param : graph.nodes()) {
    if (param.kind != NodeKind::parameter) continue;
    std::vector<int> calls;
    for (int id = 1; id <= target; ++id) {
      const TraceNode& n = graph.node(id);
      if (n.kind == NodeKind::call && reaches_target[static_cast<std::size_t>(id)] &&
          std::binary_search(n.inputs.begin(), n.inputs.end(), param.id))
        calls.push_back(id);
    }
    if (calls.empty()) continue;

    std::vector<char> keep = ancestors(graph, calls);
    // Ids are a topological order, so one forward sweep finds descendants.
    std::vector<char> below(graph.size() + 1, 0);
    for (int c : calls) below[static_cast<std::size_t>(c)] = 1;
    for (int id = calls.front(); id <= target; ++id) {
      const auto i = static_cast<std::size_t>(id);
      if (!below[i])
        for (int in : graph.node(id).inputs)
          if (below[static_cast<std::size_t>(in)]) {
            below[i] = 1;
            break;
          }
      if (below[i] && reaches_target[i]) keep[i] = 1;
    }

    FeedbackBinding b;
    b.parameter = param.function;
    b.feedback = feedback;
    for (std::size_t i = 1; i < keep.size(); ++i)
      if (keep[i]) b.subgraph.push_back(static_cast<int>(i));
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace codeplay::trace
