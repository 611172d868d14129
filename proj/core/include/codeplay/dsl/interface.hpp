#pragma once

#include <string>
#include <vector>

#include "codeplay/dsl/ast.hpp"
#include "codeplay/game.hpp"

namespace codeplay::dsl {

struct ExpectedFunction {
  std::string name;
  int arity = 0;
  bool trainable = false;
};

/// Checks that every expected function exists with the given arity and
/// trainable flag. Extra helper functions are allowed. Returns one message
/// per violation, each naming the function; empty means the program conforms.
std::vector<std::string> validate_interface(const PolicyProgram& program,
                                            const std::vector<ExpectedFunction>& expected);

/// The user-defined interface of each game's policy.
///   pong:           predict_ball_trajectory(obs), select_action(predicted_ball_y, obs)
///   breakout:       predict_ball_trajectory(obs), generate_paddle_target(pre_ball_x, obs),
///                   select_paddle_action(target_paddle_pos, obs)
///   space_invaders: decide_shoot(obs), decide_movement(obs), combine_actions(shoot, movement)
/// All are trainable; the entry function takes one argument.
const std::vector<ExpectedFunction>& game_interface(Game game);

/// validate_interface against game_interface plus an arity-1 entry check.
std::vector<std::string> validate_for_game(const PolicyProgram& program, Game game);

}  // namespace codeplay::dsl
