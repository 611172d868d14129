#pragma once

#include <array>
#include <vector>

#include "codeplay/env/game_sim.hpp"
#include "codeplay/env/physics.hpp"

namespace codeplay::env {

class BreakoutSim final : public GameSim {
 public:
  struct Brick {
    int row = 0;  // 0 = top (red)
    int col = 0;
    friend auto operator<=>(const Brick&, const Brick&) = default;
  };

  struct State {
    ObjectState paddle;
    ObjectState ball;
    /// alive[row][col]
    std::array<std::array<bool, physics::breakout::kBricksPerRow>, 6> alive{};
    bool fast = false;
    bool wall_rebuilt = false;
    int lives = physics::breakout::kLives;
    int score = 0;
  };

  Game game() const override { return Game::breakout; }
  void reset(std::uint64_t seed) override;
  int advance(int action) override;
  bool game_over() const override;
  Observation observe() const override;

  const State& state() const { return state_; }
  State& mutable_state() { return state_; }

  static ObjectState brick_rect(int row, int col);
  static int brick_points(int row) { return physics::breakout::kRowPoints[row]; }
  int bricks_remaining() const;

 private:
  void launch();
  int resolve_bricks(int prev_x, int prev_y);
  void resolve_paddle(int prev_y);
  void fill_wall();

  State state_;
};

}  // namespace codeplay::env
