#pragma once

#include <cstdint>
#include <string>

#include "codeplay/dsl/ast.hpp"
#include "codeplay/dsl/interpreter.hpp"
#include "codeplay/env/observation.hpp"
#include "codeplay/game.hpp"
#include "codeplay/trace/graph.hpp"

namespace codeplay::trace {

struct RolloutResult {
  TraceGraph graph;
  int total_reward = 0;
  /// Steps executed; equals graph.outputs_per_step().size().
  int steps = 0;
  /// The game ended (terminated) before the step cap.
  bool terminated = false;
  /// Policy failure that stopped the rollout early; empty when none.
  std::string error;
  env::Observation last_obs;
};

/// Empty when `v` is a legal action code for `game`, else the reason it is not.
std::string check_action(const dsl::Value& v, Game game);

/// Plays up to `max_steps` steps of `game` from `seed`, recording every
/// trainable call. The policy at step t draws randomness from
/// policy_seed(seed, t). A policy error ends the rollout; it is reported in
/// `error`, never thrown.
RolloutResult traced_rollout(const dsl::PolicyProgram& program, Game game, std::uint64_t seed,
                             int max_steps, int step_budget = dsl::kDefaultStepBudget);

/// Re-executes every recorded step from its input snapshot and recorded seed
/// and compares each call node's output. Returns an empty string when every
/// value is reproduced, else a description of the first mismatch.
std::string verify_replay(const TraceGraph& graph, const dsl::PolicyProgram& program,
                          int step_budget = dsl::kDefaultStepBudget);

}  // namespace codeplay::trace
