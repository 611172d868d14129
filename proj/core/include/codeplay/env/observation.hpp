#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "codeplay/game.hpp"

namespace codeplay::env {

/// Screen extent; every object's (x, y) stays inside [0, kScreenWidth] x [0, kScreenHeight].
inline constexpr int kScreenWidth = 160;
inline constexpr int kScreenHeight = 210;

/// Object-centric state in screen pixels, y growing downward.
/// Velocities are pixels per logical step (one step = 4 emulated frames).
struct ObjectState {
  int x = 0;
  int y = 0;
  int w = 1;
  int h = 1;
  int dx = 0;
  int dy = 0;

  friend auto operator<=>(const ObjectState&, const ObjectState&) = default;
};

/// The agent's entire world view for one step.
///
/// Single objects live in `objects` ("Player", "Ball", "Alien3", ...).
/// Breakout brick rows are groups ("RB", "OB", "YB", "GB", "AB", "BB"),
/// each a list of the row's remaining bricks sorted by x.
struct Observation {
  std::map<std::string, ObjectState> objects;
  std::map<std::string, std::vector<ObjectState>> groups;
  int lives = 0;
  int score = 0;

  bool contains(const std::string& label) const {
    return objects.count(label) != 0 || groups.count(label) != 0;
  }

  friend bool operator==(const Observation&, const Observation&) = default;
};

struct StepResult {
  Observation obs;
  int reward = 0;
  bool terminated = false;
  bool truncated = false;
};

/// True when `label` belongs to the declared label vocabulary of `game`.
bool is_known_label(Game game, const std::string& label);

/// Checks the observation invariants (vocabulary, bounds, positive sizes,
/// lives >= 0). Returns an empty string when they hold, else a description.
std::string check_observation(Game game, const Observation& obs);

}  // namespace codeplay::env
