#pragma once

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

#include "codeplay/dsl/ast.hpp"
#include "codeplay/feedback/stages.hpp"
#include "codeplay/trace/backward.hpp"
#include "codeplay/trace/graph.hpp"

namespace codeplay::opt {

enum class BackendKind { mock, http };

std::string_view to_string(BackendKind kind);
/// Accepts "mock" and "http". Throws ConfigError.
BackendKind parse_backend_kind(std::string_view text);

inline constexpr int kDefaultPromptBudget = 100000;

struct OptimizerConfig {
  int memory_size = 5;
  /// Upper bound on the whole rendered prompt, in characters.
  int char_budget = kDefaultPromptBudget;
  BackendKind backend = BackendKind::mock;
  std::string endpoint;
  std::string model_name;
  int max_retries = 2;
  /// JSON script read by the mock backend.
  std::string mock_script;
  /// Environment variable holding the HTTP backend's API key.
  std::string api_key_env = "CODEPLAY_API_KEY";
  int timeout_seconds = 120;
};

/// Throws ConfigError when a field is out of range or the backend lacks
/// what it needs (an endpoint for http, a script for mock).
void validate(const OptimizerConfig& config);

struct MemoryEntry {
  int iteration = 0;
  /// The update as the backend proposed it, one fenced block per function.
  std::string update;
  /// Feedback observed after the update was applied (or rejected).
  std::string feedback;

  friend bool operator==(const MemoryEntry&, const MemoryEntry&) = default;
};

/// The last `capacity` (update, feedback) pairs, oldest first.
class OptimizerMemory {
 public:
  explicit OptimizerMemory(std::size_t capacity = 5) : capacity_(capacity) {}

  void push(MemoryEntry entry);
  const std::deque<MemoryEntry>& entries() const { return entries_; }
  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::size_t capacity_;
  std::deque<MemoryEntry> entries_;
};

inline constexpr std::string_view kNoPriorAttempts = "(no prior attempts)";

struct PromptContext {
  std::string instructions;
  std::string code_section;
  std::string trace_section;
  std::string feedback_section;
  std::string memory_section;

  /// All sections under fixed headings, in a fixed order.
  std::string render() const;
};

/// Assembles the optimizer prompt. The trace slice gets whatever budget the
/// other sections leave; memory entries are dropped oldest first if the
/// newest trace step would not otherwise fit. Deterministic.
/// Throws trace::SliceBudgetError when even an empty memory leaves too little room.
PromptContext build_prompt(const trace::TraceGraph& graph,
                           const std::vector<trace::FeedbackBinding>& bindings,
                           const feedback::FeedbackReport& feedback,
                           const dsl::PolicyProgram& program, const OptimizerMemory& memory,
                           const OptimizerConfig& config);

}  // namespace codeplay::opt
