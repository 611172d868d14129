#include "codeplay/opt/prompt.hpp"

#include <algorithm>

#include "codeplay/dsl/formatter.hpp"
#include "codeplay/error.hpp"
#include "codeplay/trace/prompt_slice.hpp"

namespace codeplay::opt {

namespace {

constexpr const char* kInstructions =
    R"(You are improving a game-playing policy written in a small policy language.
The trainable functions are listed under CODE. TRACE shows recent steps of a
rollout, newest first: the observation the policy saw, each trainable call
with its result, the chosen action and the reward. FEEDBACK describes how the
current policy performs; MEMORY lists earlier attempts and how they fared.

Language summary: `fn name(args) { ... }` bodies use `if`/`elif`/`else`,
`while`, `for x in list`, `for label, object in obs`, `return`, `break`,
`continue`, `pass`, assignment and `+= -= *= /=`. Values are numbers, booleans,
`none`, strings, lists and read-only objects with fields x, y, w, h, dx, dy.
Index the observation with a label (`obs["Ball"]`) and test membership with
`"Ball" in obs`. Builtins: abs, min, max, floor, len, starts_with,
random_choice, random_uniform, get, range. There are no methods, no ternary
operator and no recursion.

Rewrite any subset of the trainable functions. For each one, reply with a
fenced block whose opening fence names the function and whose content is the
new body without the surrounding `fn` line and braces, for example:

```policy select_action
if predicted_ball_y == none {
    return 0
}
return 3
```

A leading docstring in the block replaces the old one; without one the old
docstring is kept. Do not change parameter lists.)";

std::string render_code(const dsl::PolicyProgram& program) {
  std::string out;
  for (const auto& f : program.functions) {
    if (!f.trainable) continue;
    if (!out.empty()) out += "\n";
    out += dsl::format_function(f);
  }
  if (out.empty()) out = "(no trainable functions)\n";
  return out;
}

std::string render_memory(const OptimizerMemory& memory, std::size_t keep) {
  if (keep == 0 || memory.size() == 0) return std::string(kNoPriorAttempts) + "\n";
  std::string out;
  const auto& entries = memory.entries();
  for (auto it = entries.end() - static_cast<std::ptrdiff_t>(std::min(keep, entries.size()));
       it != entries.end(); ++it) {
    out += "### attempt from iteration " + std::to_string(it->iteration) + "\n";
    out += "update:\n" + it->update;
    if (!it->update.empty() && it->update.back() != '\n') out += "\n";
    out += "feedback:\n" + it->feedback;
    if (!it->feedback.empty() && it->feedback.back() != '\n') out += "\n";
  }
  return out;
}

constexpr const char* kHeadings[] = {"## INSTRUCTIONS\n", "\n## CODE\n", "\n## TRACE\n",
                                     "\n## FEEDBACK\n", "\n## MEMORY\n"};

std::size_t headings_size() {
  std::size_t n = 0;
  for (const char* h : kHeadings) n += std::char_traits<char>::length(h);
  return n;
}

}  // namespace

std::string_view to_string(BackendKind kind) { return kind == BackendKind::http ? "http" : "mock"; }

BackendKind parse_backend_kind(std::string_view text) {
  if (text == "mock") return BackendKind::mock;
  if (text == "http") return BackendKind::http;
  throw ConfigError("unknown backend '" + std::string(text) + "' (expected mock or http)");
}

void validate(const OptimizerConfig& config) {
  if (config.memory_size < 0) throw ConfigError("memory_size must be >= 0");
  if (config.max_retries < 0) throw ConfigError("max_retries must be >= 0");
  if (config.char_budget <= 0) throw ConfigError("char_budget must be positive");
  if (config.timeout_seconds <= 0) throw ConfigError("timeout_seconds must be positive");
  if (config.backend == BackendKind::http && config.endpoint.empty())
    throw ConfigError("the http backend needs an endpoint");
  if (config.backend == BackendKind::mock && config.mock_script.empty())
    throw ConfigError("the mock backend needs a script file");
}

void OptimizerMemory::push(MemoryEntry entry) {
  if (capacity_ == 0) return;
  entries_.push_back(std::move(entry));
  while (entries_.size() > capacity_) entries_.pop_front();
}

std::string PromptContext::render() const {
  std::string out;
  const std::string* parts[] = {&instructions, &code_section, &trace_section, &feedback_section,
                                &memory_section};
  for (int i = 0; i < 5; ++i) {
    out += kHeadings[i];
    out += *parts[i];
    if (!parts[i]->empty() && parts[i]->back() != '\n') out += "\n";
  }
  return out;
}

PromptContext build_prompt(const trace::TraceGraph& graph,
                           const std::vector<trace::FeedbackBinding>& bindings,
                           const feedback::FeedbackReport& feedback,
                           const dsl::PolicyProgram& program, const OptimizerMemory& memory,
                           const OptimizerConfig& config) {
  PromptContext ctx;
  ctx.instructions = std::string(kInstructions) + "\n";
  ctx.code_section = render_code(program);
  ctx.feedback_section = feedback.text + "\n";

  std::size_t keep = std::min(memory.size(), static_cast<std::size_t>(std::max(config.memory_size, 0)));
  for (;;) {
    ctx.memory_section = render_memory(memory, keep);
    const std::size_t fixed = headings_size() + ctx.instructions.size() + ctx.code_section.size() +
                              ctx.feedback_section.size() + ctx.memory_section.size();
    const long room = static_cast<long>(config.char_budget) - static_cast<long>(fixed) - 1;
    try {
      if (room <= 0) throw trace::SliceBudgetError("prompt budget exhausted before the trace");
      ctx.trace_section = trace::extract_prompt_slice(graph, bindings, static_cast<int>(room));
      return ctx;
    } catch (const trace::SliceBudgetError& e) {
      if (keep == 0)
        throw trace::SliceBudgetError("prompt budget of " + std::to_string(config.char_budget) +
                                      " characters cannot hold the code, feedback and newest "
                                      "trace step: " + e.what());
      --keep;
    }
  }
}

}  // namespace codeplay::opt
