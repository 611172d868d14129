#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>

namespace codeplay {

enum class Game { pong, breakout, space_invaders };

inline constexpr std::array<Game, 3> kAllGames{Game::pong, Game::breakout,
                                               Game::space_invaders};

/// Accepts "pong", "breakout", "space_invaders" (also "space-invaders").
/// Throws ConfigError on anything else.
Game parse_game(std::string_view name);
std::string_view to_string(Game game);

/// Legal action codes for the game, ascending.
std::span<const int> action_set(Game game);
bool is_legal_action(Game game, int action);

/// Default traced-rollout length per game (Pong 400, Breakout 300,
/// Space Invaders 15).
int default_rollout_steps(Game game);

/// Default full-game evaluation episode length.
inline constexpr int kDefaultEvalEpisodeLength = 4000;

}  // namespace codeplay
