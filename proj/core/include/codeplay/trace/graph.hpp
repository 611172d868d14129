#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "codeplay/dsl/value.hpp"
#include "codeplay/error.hpp"

namespace codeplay::trace {

/// Dangling input ids, unknown node ids, or a violated graph invariant.
class TraceError : public Error {
 public:
  using Error::Error;
};

enum class NodeKind { input, parameter, call };

std::string_view to_string(NodeKind kind);
NodeKind parse_node_kind(std::string_view text);

/// Reward and policy seed of one executed rollout step.
struct StepOutput {
  int reward = 0;
  std::uint64_t rng_seed = 0;
};

struct TraceNode {
  int id = 0;
  NodeKind kind = NodeKind::input;
  /// Function name for parameter and call nodes, empty for inputs.
  std::string function;
  /// Ids of the nodes this one was computed from; all smaller than id.
  std::vector<int> inputs;
  /// Deep copy taken when the node was recorded. Parameter nodes hold code text.
  dsl::Value output;
  /// Rollout step, -1 for parameter nodes.
  int step = -1;
};

/// Append-only DAG of a traced rollout. Ids start at 1 and increase by one.
///
/// Every rollout step contributes an input node (the observation) and the
/// call nodes of trainable functions invoked while choosing the action. The
/// input node of step t > 0 lists the output node of step t - 1, since the
/// environment turned that action into the new observation.
class TraceGraph {
 public:
  int add_input(dsl::Value snapshot, int step, std::vector<int> inputs = {});
  int add_parameter(std::string function, std::string code);
  /// Throws TraceError if an input id does not exist.
  int record_call(std::string function, std::vector<int> inputs, dsl::Value output, int step);

  /// Marks `node` as the output of `step`. Each step may be set once.
  void set_step_output(int step, int node, StepOutput info);

  const std::vector<TraceNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool contains(int id) const { return id >= 1 && id <= static_cast<int>(nodes_.size()); }
  /// Throws TraceError for unknown ids.
  const TraceNode& node(int id) const;

  const std::map<int, int>& outputs_per_step() const { return outputs_; }
  const std::map<int, StepOutput>& step_info() const { return step_info_; }
  std::optional<int> last_output() const;
  /// Parameter node of `function`, if one was added.
  std::optional<int> parameter_of(const std::string& function) const;

  /// Re-checks the structural invariants: ids dense and ordered, inputs
  /// earlier than their node, every call refers to at most one parameter node
  /// (its own function's). Throws TraceError on violation.
  void check_invariants() const;

 private:
  int append(TraceNode node);

  std::vector<TraceNode> nodes_;
  std::map<int, int> outputs_;
  std::map<int, StepOutput> step_info_;
  std::map<std::string, int> parameters_;
};

}  // namespace codeplay::trace
