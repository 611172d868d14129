#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "codeplay/dsl/metrics.hpp"
#include "codeplay/harness/run_config.hpp"
#include "codeplay/opt/backend.hpp"

namespace codeplay::harness {

struct IterationEntry {
  int iteration = 0;
  std::uint64_t rollout_seed = 0;
  /// Reward of the traced rollout of the program the iteration started with.
  double rollout_reward = 0.0;
  int rollout_steps = 0;
  /// Full-game evaluation of the program the iteration ended with.
  double eval_reward = 0.0;
  /// Feedback given to the optimizer in this iteration.
  std::string feedback_text;
  bool update_accepted = false;
  /// Why the update was rejected, or the backend failure; empty otherwise.
  std::string rejection;
  bool backend_failed = false;
  /// Metrics of the program the iteration ended with.
  dsl::CodeMetrics metrics;

  friend bool operator==(const IterationEntry&, const IterationEntry&) = default;
};

struct BestPolicy {
  /// 0 stands for the initial program.
  int iteration = 0;
  /// Formatted source.
  std::string program;
  double eval_reward = 0.0;

  friend bool operator==(const BestPolicy&, const BestPolicy&) = default;
};

struct RunRecord {
  Game game = Game::pong;
  feedback::FeedbackMode feedback_mode = feedback::FeedbackMode::staged_full_game;
  double initial_eval_reward = 0.0;
  dsl::CodeMetrics initial_metrics;
  std::vector<IterationEntry> iterations;
  /// Highest eval reward over the initial program and every iteration; ties
  /// go to the earliest.
  BestPolicy best;

  int backend_failures() const;
  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Stable JSON form written to record.json.
std::string record_to_json(const RunRecord& record);

struct TrainHooks {
  /// Called after each finished iteration.
  std::function<void(const IterationEntry&)> on_iteration;
  /// Replaces the backend built from the config when set.
  opt::Backend* backend = nullptr;
};

/// Runs config.iterations rounds of: traced rollout, feedback, backward from
/// the last step's output, prompt, proposal, apply with rollback, full-game
/// evaluation of the resulting program.
///
/// run_dir receives config.txt, run.log, record.json, best_policy.pol and
/// per iteration iter_NNN/{policy.pol, prompt.txt, response.txt, feedback.txt,
/// trace.json}; iter_000/policy.pol holds the initial program.
///
/// Throws ConfigError when the config or initial policy is invalid and
/// IoError when run_dir cannot be written. Policy crashes and backend
/// failures are recorded per iteration and never abort the run.
RunRecord train(const RunConfig& config, const TrainHooks& hooks = {});

/// iter_NNN directory for `iteration`.
std::filesystem::path iteration_dir(const std::filesystem::path& run_dir, int iteration);

}  // namespace codeplay::harness
