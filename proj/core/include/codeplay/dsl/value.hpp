#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "codeplay/env/observation.hpp"

namespace codeplay::dsl {

struct Value;
using ValueList = std::vector<Value>;

/// A policy-language value. Object and observation views are read-only;
/// lists are immutable and shared.
struct Value {
  using Storage = std::variant<std::monostate, bool, double, std::string, env::ObjectState,
                               std::shared_ptr<const env::Observation>,
                               std::shared_ptr<const ValueList>>;
  Storage data;

  Value() = default;
  Value(bool b) : data(b) {}
  Value(double d) : data(d) {}
  Value(int i) : data(static_cast<double>(i)) {}
  Value(std::string s) : data(std::move(s)) {}
  Value(const char* s) : data(std::string(s)) {}
  Value(const env::ObjectState& o) : data(o) {}
  Value(std::shared_ptr<const env::Observation> obs) : data(std::move(obs)) {}
  Value(ValueList items) : data(std::make_shared<const ValueList>(std::move(items))) {}

  static Value none() { return {}; }
  static Value observation(env::Observation obs) {
    return Value(std::make_shared<const env::Observation>(std::move(obs)));
  }

  bool is_none() const { return std::holds_alternative<std::monostate>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_number() const { return std::holds_alternative<double>(data); }
  bool is_text() const { return std::holds_alternative<std::string>(data); }
  bool is_object() const { return std::holds_alternative<env::ObjectState>(data); }
  bool is_observation() const {
    return std::holds_alternative<std::shared_ptr<const env::Observation>>(data);
  }
  bool is_list() const { return std::holds_alternative<std::shared_ptr<const ValueList>>(data); }

  bool as_bool() const { return std::get<bool>(data); }
  double as_number() const { return std::get<double>(data); }
  const std::string& as_text() const { return std::get<std::string>(data); }
  const env::ObjectState& as_object() const { return std::get<env::ObjectState>(data); }
  const env::Observation& as_observation() const {
    return *std::get<std::shared_ptr<const env::Observation>>(data);
  }
  const ValueList& as_list() const { return *std::get<std::shared_ptr<const ValueList>>(data); }
};

/// Python-style truthiness: none, false, 0, "", [] and empty observations are falsy.
bool truthy(const Value& v);

/// Deep equality. Numbers compare as doubles; bool and number never compare equal.
bool equals(const Value& a, const Value& b);

std::string_view type_name(const Value& v);

/// Compact single-line rendering used in traces and error messages.
std::string render(const Value& v);

}  // namespace codeplay::dsl
