#pragma once

#include <string>
#include <vector>

#include "codeplay/trace/backward.hpp"
#include "codeplay/trace/graph.hpp"

namespace codeplay::trace {

inline constexpr int kDefaultCharBudget = 60000;

/// The budget cannot hold the header plus the newest step.
class SliceBudgetError : public TraceError {
 public:
  using TraceError::TraceError;
};

/// Renders the union of the bindings' subgraphs as text, newest step first.
/// Whole oldest steps are dropped until the text fits `char_budget`.
///
///     # trace of predict_ball_trajectory, select_action; newest step first
///     == step 399 ==
///     reward: 0
///     input:
///       Ball x=152 y=100 w=2 h=4 dx=+6 dy=+4
///       lives=5 score=12
///     call predict_ball_trajectory -> 138
///     call select_action -> 2
///     output: 2
///     == step 398 ==
///     ...
///     # 120 older steps omitted
///
/// Brick rows print as one line per row. Velocities carry an explicit sign.
std::string extract_prompt_slice(const TraceGraph& graph,
                                 const std::vector<FeedbackBinding>& bindings,
                                 int char_budget = kDefaultCharBudget);

/// Step numbers appearing in a rendered slice, in order of appearance.
std::vector<int> slice_steps(const std::string& slice);

}  // namespace codeplay::trace
