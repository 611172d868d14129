#include "codeplay/trace/graph.hpp"

#include <algorithm>

namespace codeplay::trace {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::input: return "input";
    case NodeKind::parameter: return "parameter";
    case NodeKind::call: return "call";
  }
  return "input";
}

NodeKind parse_node_kind(std::string_view text) {
  if (text == "input") return NodeKind::input;
  if (text == "parameter") return NodeKind::parameter;
  if (text == "call") return NodeKind::call;
  throw TraceError("unknown node kind '" + std::string(text) + "'");
}

int TraceGraph::append(TraceNode node) {
  node.id = static_cast<int>(nodes_.size()) + 1;
  for (int in : node.inputs)
    if (!contains(in))
      throw TraceError("node input " + std::to_string(in) + " does not exist (graph has " +
                       std::to_string(nodes_.size()) + " nodes)");
  std::sort(node.inputs.begin(), node.inputs.end());
  node.inputs.erase(std::unique(node.inputs.begin(), node.inputs.end()), node.inputs.end());
  nodes_.push_back(std::move(node));
  return nodes_.back().id;
}

int TraceGraph::add_input(dsl::Value snapshot, int step, std::vector<int> inputs) {
  TraceNode n;
  n.kind = NodeKind::input;
  n.inputs = std::move(inputs);
  n.output = std::move(snapshot);
  n.step = step;
  return append(std::move(n));
}

int TraceGraph::add_parameter(std::string function, std::string code) {
  if (parameters_.count(function)) throw TraceError("duplicate parameter node for " + function);
  TraceNode n;
  n.kind = NodeKind::parameter;
  n.function = function;
  n.output = dsl::Value(std::move(code));
  const int id = append(std::move(n));
  parameters_.emplace(std::move(function), id);
  return id;
}

int TraceGraph::record_call(std::string function, std::vector<int> inputs, dsl::Value output,
                            int step) {
  TraceNode n;
  n.kind = NodeKind::call;
  n.function = std::move(function);
  n.inputs = std::move(inputs);
  n.output = std::move(output);
  n.step = step;
  return append(std::move(n));
}

void TraceGraph::set_step_output(int step, int node, StepOutput info) {
  if (!contains(node)) throw TraceError("step output refers to unknown node " + std::to_string(node));
  if (!outputs_.emplace(step, node).second)
    throw TraceError("step " + std::to_string(step) + " already has an output");
  step_info_[step] = info;
}

const TraceNode& TraceGraph::node(int id) const {
  if (!contains(id)) throw TraceError("unknown trace node " + std::to_string(id));
  return nodes_[static_cast<std::size_t>(id - 1)];
}

std::optional<int> TraceGraph::last_output() const {
  if (outputs_.empty()) return std::nullopt;
  return outputs_.rbegin()->second;
}

std::optional<int> TraceGraph::parameter_of(const std::string& function) const {
  auto it = parameters_.find(function);
  if (it == parameters_.end()) return std::nullopt;
  return it->second;
}

void TraceGraph::check_invariants() const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const TraceNode& n = nodes_[i];
    if (n.id != static_cast<int>(i) + 1) throw TraceError("node ids are not dense");
    int params = 0;
    for (int in : n.inputs) {
      if (in < 1 || in >= n.id)
        throw TraceError("node " + std::to_string(n.id) + " has a non-earlier input " +
                         std::to_string(in));
      const TraceNode& src = nodes_[static_cast<std::size_t>(in - 1)];
      if (n.kind == NodeKind::call && src.kind == NodeKind::parameter) {
        ++params;
        if (src.function != n.function)
          throw TraceError("call node " + std::to_string(n.id) + " of " + n.function +
                           " refers to the parameter of " + src.function);
      }
    }
    if (params > 1)
      throw TraceError("call node " + std::to_string(n.id) + " refers to several parameters");
  }
  for (const auto& [step, id] : outputs_)
    if (!contains(id)) throw TraceError("step " + std::to_string(step) + " output is dangling");
}

}  // namespace codeplay::trace
