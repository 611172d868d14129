#include "codeplay/env/arcade_env.hpp"

#include <string>

#include "codeplay/env/breakout.hpp"
#include "codeplay/env/pong.hpp"
#include "codeplay/env/space_invaders.hpp"

namespace codeplay::env {

std::unique_ptr<GameSim> make_sim(Game game) {
  switch (game) {
    case Game::pong: return std::make_unique<PongSim>();
    case Game::breakout: return std::make_unique<BreakoutSim>();
    case Game::space_invaders: return std::make_unique<SpaceInvadersSim>();
  }
  throw ConfigError("unsupported game");
}

ArcadeEnv::ArcadeEnv(EnvConfig config) : config_(config), sim_(make_sim(config.game)) {
  if (config_.max_steps <= 0) throw ConfigError("max_steps must be positive");
}

Observation ArcadeEnv::reset() { return reset(config_.seed); }

Observation ArcadeEnv::reset(std::uint64_t seed) {
  config_.seed = seed;
  sim_->reset(seed);
  action_log_.clear();
  steps_ = 0;
  started_ = true;
  done_ = false;
  return sim_->observe();
}

StepResult ArcadeEnv::step(int action) {
  if (!started_) throw EnvStateError("step() called before reset()");
  if (done_) throw EnvStateError("step() called after the episode ended; call reset()");
  if (!is_legal_action(config_.game, action))
    throw InvalidActionError("action " + std::to_string(action) + " is not legal in " +
                             std::string(to_string(config_.game)));

  action_log_.push_back(action);
  StepResult result;
  result.reward = sim_->advance(action);
  ++steps_;
  result.obs = sim_->observe();
  result.terminated = sim_->game_over();
  result.truncated = !result.terminated && steps_ >= config_.max_steps;
  done_ = result.terminated || result.truncated;
  return result;
}

Observation reset(const EnvConfig& config) {
  ArcadeEnv env(config);
  return env.reset();
}

}  // namespace codeplay::env
