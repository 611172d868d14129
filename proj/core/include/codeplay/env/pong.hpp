#pragma once

#include "codeplay/env/game_sim.hpp"

namespace codeplay::env {

class PongSim final : public GameSim {
 public:
  struct State {
    ObjectState player;
    ObjectState enemy;
    ObjectState ball;
    int player_points = 0;
    int enemy_points = 0;
  };

  Game game() const override { return Game::pong; }
  void reset(std::uint64_t seed) override;
  int advance(int action) override;
  bool game_over() const override;
  Observation observe() const override;

  const State& state() const { return state_; }
  /// Mutable access for constructing scenarios in tests.
  State& mutable_state() { return state_; }

 private:
  void serve(int direction);
  void move_enemy();
  int zone_dy(const ObjectState& paddle, int incoming_dy) const;

  State state_;
};

}  // namespace codeplay::env
