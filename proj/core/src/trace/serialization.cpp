#include "codeplay/trace/serialization.hpp"

#include "detail/value_json.hpp"

namespace codeplay::trace {

std::string to_json(const TraceGraph& graph, int indent) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  std::map<int, int> step_of_output;
  for (const auto& [step, id] : graph.outputs_per_step()) step_of_output[id] = step;
  for (const TraceNode& n : graph.nodes()) {
    nlohmann::ordered_json j;
    j["id"] = n.id;
    j["kind"] = std::string(to_string(n.kind));
    j["function"] = n.function;
    j["inputs"] = n.inputs;
    j["step"] = n.step;
    j["output"] = detail::to_json(n.output);
    if (auto it = step_of_output.find(n.id); it != step_of_output.end()) {
      const StepOutput& info = graph.step_info().at(it->second);
      j["step_output"] = {{"step", it->second}, {"reward", info.reward}, {"rng_seed", info.rng_seed}};
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(indent);
}

TraceGraph from_json(const std::string& text) {
  TraceGraph g;
  try {
    const auto arr = nlohmann::json::parse(text);
    if (!arr.is_array()) throw TraceError("trace dump must be a JSON array");
    for (const auto& j : arr) {
      const NodeKind kind = parse_node_kind(j.at("kind").get<std::string>());
      const int step = j.at("step").get<int>();
      auto inputs = j.at("inputs").get<std::vector<int>>();
      dsl::Value output = detail::value_from(j.at("output"));
      int id = 0;
      switch (kind) {
        case NodeKind::input: id = g.add_input(std::move(output), step, std::move(inputs)); break;
        case NodeKind::parameter: {
          if (!output.is_text()) throw TraceError("parameter node output must be a string");
          id = g.add_parameter(j.at("function").get<std::string>(), output.as_text());
          break;
        }
        case NodeKind::call:
          id = g.record_call(j.at("function").get<std::string>(), std::move(inputs),
                             std::move(output), step);
          break;
      }
      if (id != j.at("id").get<int>()) throw TraceError("node ids must be dense and ordered");
      if (j.contains("step_output")) {
        const auto& so = j.at("step_output");
        g.set_step_output(so.at("step").get<int>(), id,
                          StepOutput{so.at("reward").get<int>(), so.at("rng_seed").get<std::uint64_t>()});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw TraceError(std::string("malformed trace dump: ") + e.what());
  }
  return g;
}

}  // namespace codeplay::trace
