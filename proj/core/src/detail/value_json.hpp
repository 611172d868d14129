#pragma once

// Tagged JSON form of policy values. Not installed.

#include "codeplay/dsl/value.hpp"
#include "detail/json_codec.hpp"

namespace codeplay::detail {

inline nlohmann::ordered_json to_json(const dsl::Value& v) {
  nlohmann::ordered_json j;
  if (v.is_none()) {
    j["type"] = "none";
  } else if (v.is_bool()) {
    j["type"] = "bool";
    j["value"] = v.as_bool();
  } else if (v.is_number()) {
    j["type"] = "number";
    j["value"] = v.as_number();
  } else if (v.is_text()) {
    j["type"] = "string";
    j["value"] = v.as_text();
  } else if (v.is_object()) {
    j = to_json(v.as_object());
    j["type"] = "object";
  } else if (v.is_observation()) {
    j = to_json(v.as_observation());
    j["type"] = "observation";
  } else {
    j["type"] = "list";
    auto& items = j["items"] = nlohmann::ordered_json::array();
    for (const auto& item : v.as_list()) items.push_back(to_json(item));
  }
  return j;
}

inline dsl::Value value_from(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "none") return dsl::Value::none();
  if (type == "bool") return dsl::Value(j.at("value").get<bool>());
  if (type == "number") return dsl::Value(j.at("value").get<double>());
  if (type == "string") return dsl::Value(j.at("value").get<std::string>());
  if (type == "object") return dsl::Value(object_from(j));
  if (type == "observation") return dsl::Value::observation(observation_from(j));
  if (type == "list") {
    dsl::ValueList items;
    for (const auto& item : j.at("items")) items.push_back(value_from(item));
    return dsl::Value(std::move(items));
  }
  throw nlohmann::json::other_error::create(501, "unknown value type '" + type + "'", &j);
}

}  // namespace codeplay::detail
