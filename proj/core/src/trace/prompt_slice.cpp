#include "codeplay/trace/prompt_slice.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace codeplay::trace {

namespace {

std::string signed_int(int v) { return v > 0 ? "+" + std::to_string(v) : std::to_string(v); }

std::string object_line(const std::string& label, const env::ObjectState& o) {
  return "  " + label + " x=" + std::to_string(o.x) + " y=" + std::to_string(o.y) +
         " w=" + std::to_string(o.w) + " h=" + std::to_string(o.h) + " dx=" + signed_int(o.dx) +
         " dy=" + signed_int(o.dy) + "\n";
}

std::string group_lines(const std::string& label, const std::vector<env::ObjectState>& items) {
  if (items.empty()) return "  " + label + " (0)\n";
  const auto& first = items.front();
  bool uniform = true;
  for (const auto& o : items)
    uniform = uniform && o.y == first.y && o.w == first.w && o.h == first.h && o.dx == first.dx &&
              o.dy == first.dy;
  if (!uniform) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i)
      out += object_line(label + "[" + std::to_string(i) + "]", items[i]);
    return out;
  }
  std::string out = "  " + label + " (" + std::to_string(items.size()) + ") y=" +
                    std::to_string(first.y) + " w=" + std::to_string(first.w) +
                    " h=" + std::to_string(first.h) + " x=";
  for (std::size_t i = 0; i < items.size(); ++i)
    out += (i ? "," : "") + std::to_string(items[i].x);
  return out + "\n";
}

std::string render_input(const dsl::Value& v) {
  if (!v.is_observation()) return "  " + dsl::render(v) + "\n";
  const auto& obs = v.as_observation();
  std::string out;
  for (const auto& [label, o] : obs.objects) out += object_line(label, o);
  for (const auto& [label, items] : obs.groups) out += group_lines(label, items);
  out += "  lives=" + std::to_string(obs.lives) + " score=" + std::to_string(obs.score) + "\n";
  return out;
}

std::string omitted_line(std::size_t n) {
  return n == 0 ? "" : "# " + std::to_string(n) + " older step" + (n == 1 ? "" : "s") + " omitted\n";
}

}  // namespace

std::string extract_prompt_slice(const TraceGraph& graph,
                                 const std::vector<FeedbackBinding>& bindings, int char_budget) {
  std::set<int> ids;
  for (const auto& b : bindings) ids.insert(b.subgraph.begin(), b.subgraph.end());

  std::string header = "# trace of ";
  {
    std::string names;
    for (const auto& b : bindings) names += (names.empty() ? "" : ", ") + b.parameter;
    header += names.empty() ? "no trainable functions" : names;
    header += "; newest step first\n";
  }

  std::map<int, std::vector<int>, std::greater<>> by_step;
  for (int id : ids) {
    const TraceNode& n = graph.node(id);
    if (n.step >= 0) by_step[n.step].push_back(id);
  }

  std::vector<std::string> blocks;
  blocks.reserve(by_step.size());
  for (const auto& [step, nodes] : by_step) {
    std::string block = "== step " + std::to_string(step) + " ==\n";
    if (auto it = graph.step_info().find(step); it != graph.step_info().end())
      block += "reward: " + std::to_string(it->second.reward) + "\n";
    for (int id : nodes) {
      const TraceNode& n = graph.node(id);
      if (n.kind == NodeKind::input) block += "input:\n" + render_input(n.output);
    }
    for (int id : nodes) {
      const TraceNode& n = graph.node(id);
      if (n.kind == NodeKind::call) block += "call " + n.function + " -> " + dsl::render(n.output) + "\n";
    }
    if (auto it = graph.outputs_per_step().find(step); it != graph.outputs_per_step().end())
      block += "output: " + dsl::render(graph.node(it->second).output) + "\n";
    blocks.push_back(std::move(block));
  }

  const auto budget = static_cast<std::size_t>(std::max(char_budget, 0));
  std::size_t used = header.size();
  std::size_t kept = 0;
  for (; kept < blocks.size(); ++kept) {
    const std::size_t with = used + blocks[kept].size() + omitted_line(blocks.size() - kept - 1).size();
    if (with > budget) break;
    used += blocks[kept].size();
  }
  if (kept == 0 && (!blocks.empty() || header.size() > budget))
    throw SliceBudgetError("character budget " + std::to_string(char_budget) +
                           " cannot hold the newest trace step");

  std::string out = header;
  for (std::size_t i = 0; i < kept; ++i) out += blocks[i];
  out += omitted_line(blocks.size() - kept);
  return out;
}

std::vector<int> slice_steps(const std::string& slice) {
  std::vector<int> steps;
  std::istringstream in(slice);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("== step ", 0) == 0) steps.push_back(std::stoi(line.substr(8)));
  }
  return steps;
}

}  // namespace codeplay::trace
