#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "codeplay/env/game_sim.hpp"
#include "codeplay/error.hpp"

namespace codeplay::env {

struct EnvConfig {
  Game game = Game::pong;
  std::uint64_t seed = 0;
  int max_steps = kDefaultEvalEpisodeLength;
};

class InvalidActionError : public Error {
 public:
  using Error::Error;
};

/// Step before reset, or step after the episode ended.
class EnvStateError : public Error {
 public:
  using Error::Error;
};

std::unique_ptr<GameSim> make_sim(Game game);

/// Episodic reset/step wrapper around one GameSim.
///
/// Not thread-safe; distinct instances are independent. Identical
/// (config, action sequence) pairs replay bit-for-bit.
class ArcadeEnv {
 public:
  explicit ArcadeEnv(EnvConfig config);

  /// Reseeds from config().seed and returns the initial observation.
  Observation reset();
  Observation reset(std::uint64_t seed);

  /// Throws InvalidActionError for actions outside the game's set and
  /// EnvStateError when no episode is running.
  StepResult step(int action);

  const EnvConfig& config() const { return config_; }
  Game game() const { return config_.game; }
  int steps_taken() const { return steps_; }
  bool episode_over() const { return done_; }
  /// Actions executed since the last reset, exactly as submitted.
  const std::vector<int>& action_log() const { return action_log_; }

  GameSim& sim() { return *sim_; }
  const GameSim& sim() const { return *sim_; }

 private:
  EnvConfig config_;
  std::unique_ptr<GameSim> sim_;
  std::vector<int> action_log_;
  int steps_ = 0;
  bool started_ = false;
  bool done_ = false;
};

/// Convenience: build an env for `config` and return its initial observation.
Observation reset(const EnvConfig& config);

}  // namespace codeplay::env
