#include "codeplay/game.hpp"

#include <algorithm>

#include "codeplay/error.hpp"

namespace codeplay {

namespace {
constexpr std::array<int, 3> kPongActions{0, 2, 3};
constexpr std::array<int, 3> kBreakoutActions{0, 2, 3};
constexpr std::array<int, 6> kInvadersActions{0, 1, 2, 3, 4, 5};
}  // namespace

Game parse_game(std::string_view name) {
  if (name == "pong") return Game::pong;
  if (name == "breakout") return Game::breakout;
  if (name == "space_invaders" || name == "space-invaders" || name == "spaceinvaders")
    return Game::space_invaders;
  throw ConfigError("unknown game '" + std::string(name) +
                    "' (expected pong, breakout or space_invaders)");
}

std::string_view to_string(Game game) {
  switch (game) {
    case Game::pong: return "pong";
    case Game::breakout: return "breakout";
    case Game::space_invaders: return "space_invaders";
  }
  return "unknown";
}

std::span<const int> action_set(Game game) {
  switch (game) {
    case Game::pong: return kPongActions;
    case Game::breakout: return kBreakoutActions;
    case Game::space_invaders: return kInvadersActions;
  }
  return {};
}

bool is_legal_action(Game game, int action) {
  auto actions = action_set(game);
  return std::find(actions.begin(), actions.end(), action) != actions.end();
}

int default_rollout_steps(Game game) {
  switch (game) {
    case Game::pong: return 400;
    case Game::breakout: return 300;
    case Game::space_invaders: return 15;
  }
  return 1;
}

}  // namespace codeplay
