#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codeplay/dsl/interpreter.hpp"
#include "codeplay/feedback/stages.hpp"
#include "codeplay/game.hpp"
#include "codeplay/opt/prompt.hpp"

namespace codeplay::harness {

struct RunConfig {
  Game game = Game::pong;
  std::filesystem::path policy;
  int iterations = 20;
  /// Unset means the game's default rollout cap.
  std::optional<int> rollout_steps;
  int eval_len = kDefaultEvalEpisodeLength;
  feedback::FeedbackMode feedback_mode = feedback::FeedbackMode::staged_full_game;
  std::vector<std::uint64_t> eval_seeds{0, 1, 2};
  /// Run seed; iteration i rolls out with seed i ^ seed.
  std::uint64_t seed = 0;
  std::filesystem::path run_dir = "run";
  /// Empty means the built-in stage rules.
  std::filesystem::path stage_rules;
  int step_budget = dsl::kDefaultStepBudget;
  opt::OptimizerConfig optimizer;

  int effective_rollout_steps() const { return rollout_steps.value_or(default_rollout_steps(game)); }
};

/// Sets one key. Keys: game, policy, iterations, rollout_steps, eval_len,
/// feedback_mode, eval_seeds (comma separated), seed, run_dir, stage_rules,
/// step_budget, memory_size, char_budget, backend, endpoint, model_name,
/// max_retries, mock_script, api_key_env, timeout_seconds.
/// Relative paths are resolved against `base_dir`. Throws ConfigError.
void set_option(RunConfig& config, std::string_view key, std::string_view value,
                const std::filesystem::path& base_dir = {});

/// Parses `key = value` lines; `#` starts a comment line. Example:
///
///     # Pong with the scripted backend
///     game = pong
///     policy = policies/pong_initial.pol
///     iterations = 3
///     backend = mock
///     mock_script = scripts/pong_improving.json
///
/// Throws ConfigError naming the line.
RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

/// Every key with its effective value, one per line, loadable by parse_run_config.
std::string render_run_config(const RunConfig& config);

/// Throws ConfigError for out-of-range values.
void validate(const RunConfig& config);

}  // namespace codeplay::harness
