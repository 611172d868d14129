#include "codeplay/env/trajectory.hpp"

#include <istream>
#include <ostream>

#include "codeplay/error.hpp"
#include "detail/json_codec.hpp"

namespace codeplay::env {

void write_trajectory(std::ostream& out, const std::vector<TrajectoryRecord>& records) {
  for (const auto& r : records) {
    nlohmann::ordered_json line;
    line["step"] = r.step;
    line["obs"] = detail::to_json(r.obs);
    line["action"] = r.action;
    line["reward"] = r.reward;
    line["terminated"] = r.terminated;
    out << line.dump() << '\n';
  }
}

std::vector<TrajectoryRecord> read_trajectory(std::istream& in) {
  std::vector<TrajectoryRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      TrajectoryRecord r;
      r.step = j.at("step").get<int>();
      r.obs = detail::observation_from(j.at("obs"));
      r.action = j.at("action").get<int>();
      r.reward = j.at("reward").get<int>();
      r.terminated = j.at("terminated").get<bool>();
      records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw Error(std::string("malformed trajectory line: ") + e.what());
    }
  }
  return records;
}

std::string observation_to_json(const Observation& obs) { return detail::to_json(obs).dump(); }

Observation observation_from_json(const std::string& text) {
  try {
    return detail::observation_from(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed observation JSON: ") + e.what());
  }
}

}  // namespace codeplay::env
