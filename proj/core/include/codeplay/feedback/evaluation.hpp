#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "codeplay/dsl/ast.hpp"
#include "codeplay/dsl/interpreter.hpp"
#include "codeplay/game.hpp"

namespace codeplay::feedback {

/// Seeds used when none are given.
std::vector<std::uint64_t> default_eval_seeds();

struct EpisodeResult {
  std::uint64_t seed = 0;
  /// Cumulative reward, including steps before a policy failure.
  double reward = 0.0;
  int steps = 0;
  int life_losses = 0;
  bool terminated = false;
  /// Policy failure that aborted the episode; empty when none.
  std::string error;
};

struct EvaluationReport {
  std::vector<EpisodeResult> episodes;
  double mean_reward = 0.0;

  /// First episode error prefixed with its seed, or empty.
  std::string first_error() const;
};

/// Plays one untraced episode of at most `episode_len` steps. The policy at
/// step t draws randomness from policy_seed(seed, t).
EpisodeResult play_episode(const dsl::PolicyProgram& program, Game game, std::uint64_t seed,
                           int episode_len, int step_budget = dsl::kDefaultStepBudget);

/// Plays one episode per seed (concurrently when `parallel`) and averages the
/// rewards. Results do not depend on `parallel`.
EvaluationReport evaluate_policy(const dsl::PolicyProgram& program, Game game, int episode_len,
                                 const std::vector<std::uint64_t>& seeds,
                                 int step_budget = dsl::kDefaultStepBudget, bool parallel = true);

}  // namespace codeplay::feedback
