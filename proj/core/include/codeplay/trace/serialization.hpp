#pragma once

#include <string>

#include "codeplay/trace/graph.hpp"

namespace codeplay::trace {

/// JSON array of nodes, in id order:
///
///     {
///       "id": 7,                      // 1-based, dense
///       "kind": "call",               // "input" | "parameter" | "call"
///       "function": "select_action",  // empty for input nodes
///       "inputs": [1, 5, 6],          // ids of earlier nodes
///       "step": 3,                    // rollout step, -1 for parameters
///       "output": {"type": "number", "value": 2},
///       "step_output": {"step": 3, "reward": 0, "rng_seed": 123}  // step outputs only
///     }
///
/// "output" is tagged by "type": "none"; "bool", "number", "string" with
/// "value"; "object" with x, y, w, h, dx, dy; "observation" with "objects",
/// optional "groups", "lives", "score"; "list" with "items".
/// Parameter nodes carry the function's source as a string.
std::string to_json(const TraceGraph& graph, int indent = -1);

/// Rebuilds a graph from to_json output. Throws TraceError on malformed input.
TraceGraph from_json(const std::string& text);

}  // namespace codeplay::trace
