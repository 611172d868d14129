#pragma once

#include <vector>

#include "codeplay/env/game_sim.hpp"

namespace codeplay::env {

class SpaceInvadersSim final : public GameSim {
 public:
  struct Alien {
    int id = 0;  // stable label index: row * cols + col
    int row = 0;
    ObjectState body;
  };
  struct Shield {
    int id = 0;
    ObjectState body;
    int hit_points = 0;
  };

  struct State {
    ObjectState player;
    std::vector<Alien> aliens;
    std::vector<Shield> shields;
    /// Player bullet has dy < 0; at most one exists.
    std::vector<ObjectState> player_bullets;
    std::vector<ObjectState> alien_bullets;
    int march_direction = 1;
    int march_clock = 0;
    int fire_clock = 0;
    int cooldown = 0;
    int lives = 3;
    int score = 0;
    bool invaded = false;
  };

  Game game() const override { return Game::space_invaders; }
  void reset(std::uint64_t seed) override;
  int advance(int action) override;
  bool game_over() const override;
  Observation observe() const override;

  const State& state() const { return state_; }
  State& mutable_state() { return state_; }

 private:
  void march();
  void alien_fire();
  int move_player_bullet();
  void move_alien_bullets();

  State state_;
};

}  // namespace codeplay::env
