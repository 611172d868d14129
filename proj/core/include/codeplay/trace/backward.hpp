#pragma once

#include <string>
#include <vector>

#include "codeplay/trace/graph.hpp"

namespace codeplay::trace {

struct FeedbackBinding {
  /// Trainable function the feedback is addressed to.
  std::string parameter;
  /// Node ids, ascending: every ancestor of the parameter's call nodes that
  /// reach the target, plus the nodes on paths from those calls to the target.
  std::vector<int> subgraph;
  std::string feedback;
};

/// One binding per parameter node with at least one call node among the
/// target's ancestors (the target itself included), ordered by parameter id.
/// Throws TraceError if `target` is not in the graph.
std::vector<FeedbackBinding> backward(const TraceGraph& graph, int target,
                                      const std::string& feedback);

}  // namespace codeplay::trace
