#pragma once

// Private JSON helpers shared by the serializers. Not installed.

#include <json.hpp>

#include "codeplay/env/observation.hpp"

namespace codeplay::detail {

inline nlohmann::ordered_json to_json(const env::ObjectState& o) {
  return {{"x", o.x}, {"y", o.y}, {"w", o.w}, {"h", o.h}, {"dx", o.dx}, {"dy", o.dy}};
}

inline env::ObjectState object_from(const nlohmann::json& j) {
  return {j.at("x").get<int>(),  j.at("y").get<int>(),  j.at("w").get<int>(),
          j.at("h").get<int>(),  j.at("dx").get<int>(), j.at("dy").get<int>()};
}

inline nlohmann::ordered_json to_json(const env::Observation& obs) {
  nlohmann::ordered_json j;
  auto& objects = j["objects"] = nlohmann::ordered_json::object();
  for (const auto& [label, o] : obs.objects) objects[label] = to_json(o);
  if (!obs.groups.empty()) {
    auto& groups = j["groups"] = nlohmann::ordered_json::object();
    for (const auto& [label, members] : obs.groups) {
      auto& arr = groups[label] = nlohmann::ordered_json::array();
      for (const auto& o : members) arr.push_back(to_json(o));
    }
  }
  j["lives"] = obs.lives;
  j["score"] = obs.score;
  return j;
}

inline env::Observation observation_from(const nlohmann::json& j) {
  env::Observation obs;
  for (const auto& [label, o] : j.at("objects").items()) obs.objects.emplace(label, object_from(o));
  if (j.contains("groups")) {
    for (const auto& [label, arr] : j.at("groups").items()) {
      auto& members = obs.groups[label];
      for (const auto& o : arr) members.push_back(object_from(o));
    }
  }
  obs.lives = j.at("lives").get<int>();
  obs.score = j.at("score").get<int>();
  return obs;
}

}  // namespace codeplay::detail
