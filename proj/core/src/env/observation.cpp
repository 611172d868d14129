#include "codeplay/env/observation.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string_view>

namespace codeplay::env {

namespace {

bool has_index_suffix(std::string_view label, std::string_view prefix) {
  if (label.size() <= prefix.size() || label.substr(0, prefix.size()) != prefix) return false;
  auto digits = label.substr(prefix.size());
  return std::all_of(digits.begin(), digits.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string check_object(const std::string& label, const ObjectState& o) {
  if (o.x < 0 || o.x > kScreenWidth || o.y < 0 || o.y > kScreenHeight)
    return label + " out of bounds at (" + std::to_string(o.x) + ", " +
           std::to_string(o.y) + ")";
  if (o.w <= 0 || o.h <= 0) return label + " has non-positive size";
  return {};
}

}  // namespace

bool is_known_label(Game game, const std::string& label) {
  switch (game) {
    case Game::pong:
      return label == "Player" || label == "Ball" || label == "Enemy";
    case Game::breakout: {
      static constexpr std::array<std::string_view, 8> kLabels{
          "Player", "Ball", "RB", "OB", "YB", "GB", "AB", "BB"};
      return std::find(kLabels.begin(), kLabels.end(), label) != kLabels.end();
    }
    case Game::space_invaders:
      return label == "Player" || has_index_suffix(label, "Alien") ||
             has_index_suffix(label, "Bullet") || has_index_suffix(label, "Shield");
  }
  return false;
}

std::string check_observation(Game game, const Observation& obs) {
  if (obs.lives < 0) return "negative lives";
  for (const auto& [label, o] : obs.objects) {
    if (!is_known_label(game, label)) return "unknown label " + label;
    if (auto err = check_object(label, o); !err.empty()) return err;
  }
  for (const auto& [label, members] : obs.groups) {
    if (!is_known_label(game, label)) return "unknown label " + label;
    for (const auto& o : members)
      if (auto err = check_object(label, o); !err.empty()) return err;
  }
  return {};
}

}  // namespace codeplay::env
