#include "codeplay/dsl/value.hpp"

#include "codeplay/dsl/formatter.hpp"

namespace codeplay::dsl {

namespace {

std::string render_object(const env::ObjectState& o) {
  return "{x=" + std::to_string(o.x) + " y=" + std::to_string(o.y) + " w=" + std::to_string(o.w) +
         " h=" + std::to_string(o.h) + " dx=" + std::to_string(o.dx) + " dy=" + std::to_string(o.dy) +
         "}";
}

}  // namespace

bool truthy(const Value& v) {
  if (v.is_none()) return false;
  if (v.is_bool()) return v.as_bool();
  if (v.is_number()) return v.as_number() != 0.0;
  if (v.is_text()) return !v.as_text().empty();
  if (v.is_list()) return !v.as_list().empty();
  if (v.is_observation()) {
    const auto& obs = v.as_observation();
    return !obs.objects.empty() || !obs.groups.empty();
  }
  return true;
}

bool equals(const Value& a, const Value& b) {
  if (a.data.index() != b.data.index()) return false;
  if (a.is_list()) {
    const auto& x = a.as_list();
    const auto& y = b.as_list();
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!equals(x[i], y[i])) return false;
    return true;
  }
  if (a.is_observation()) return a.as_observation() == b.as_observation();
  return a.data == b.data;
}

std::string_view type_name(const Value& v) {
  if (v.is_none()) return "none";
  if (v.is_bool()) return "bool";
  if (v.is_number()) return "number";
  if (v.is_text()) return "string";
  if (v.is_object()) return "object";
  if (v.is_observation()) return "observation";
  return "list";
}

std::string render(const Value& v) {
  if (v.is_none()) return "none";
  if (v.is_bool()) return v.as_bool() ? "true" : "false";
  if (v.is_number()) return format_number(v.as_number());
  if (v.is_text()) return "\"" + v.as_text() + "\"";
  if (v.is_object()) return render_object(v.as_object());
  if (v.is_list()) {
    std::string out = "[";
    const auto& items = v.as_list();
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out += ", ";
      out += render(items[i]);
    }
    return out + "]";
  }
  const auto& obs = v.as_observation();
  std::string out = "{";
  bool first = true;
  for (const auto& [label, o] : obs.objects) {
    out += (first ? "" : ", ") + label + ": " + render_object(o);
    first = false;
  }
  for (const auto& [label, items] : obs.groups) {
    out += (first ? "" : ", ") + label + ": [" + std::to_string(items.size()) + " objects]";
    first = false;
  }
  return out + ", lives=" + std::to_string(obs.lives) + ", score=" + std::to_string(obs.score) + "}";
}

}  // namespace codeplay::dsl
