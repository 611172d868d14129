#include "codeplay/trace/traced_rollout.hpp"

#include <map>

#include "codeplay/dsl/formatter.hpp"
#include "codeplay/env/arcade_env.hpp"
#include "codeplay/seeding.hpp"

namespace codeplay::trace {

namespace {

class GraphRecorder : public dsl::CallObserver {
 public:
  GraphRecorder(TraceGraph& graph, const dsl::PolicyProgram& program) : graph_(graph) {
    for (const auto& f : program.functions)
      if (f.trainable) graph_.add_parameter(f.name, dsl::format_function(f));
  }

  void set_step(int step) { step_ = step; }

  int parameter_node(const dsl::FunctionDef& f) override { return *graph_.parameter_of(f.name); }

  int record_call(const dsl::FunctionDef& f, const std::vector<int>& inputs,
                  const dsl::Value& output) override {
    return graph_.record_call(f.name, inputs, output, step_);
  }

 private:
  TraceGraph& graph_;
  int step_ = 0;
};

// Collects calls without building a graph; used for replay.
class CallLog : public dsl::CallObserver {
 public:
  std::vector<std::pair<std::string, dsl::Value>> calls;

  int parameter_node(const dsl::FunctionDef&) override { return 0; }
  int record_call(const dsl::FunctionDef& f, const std::vector<int>&,
                  const dsl::Value& output) override {
    calls.emplace_back(f.name, output);
    return 0;
  }
};

}  // namespace

std::string check_action(const dsl::Value& v, Game game) {
  if (!v.is_number() || v.as_number() != static_cast<double>(static_cast<int>(v.as_number())))
    return "entry function returned " + dsl::render(v) + ", expected an action code";
  if (!is_legal_action(game, static_cast<int>(v.as_number())))
    return "entry function returned " + dsl::render(v) + ", which is not a legal " +
           std::string(to_string(game)) + " action";
  return "";
}

RolloutResult traced_rollout(const dsl::PolicyProgram& program, Game game, std::uint64_t seed,
                             int max_steps, int step_budget) {
  RolloutResult out;
  GraphRecorder recorder(out.graph, program);
  if (max_steps <= 0) return out;

  env::ArcadeEnv env({game, seed, max_steps});
  env::Observation obs = env.reset();
  std::optional<int> previous;
  for (int t = 0; t < max_steps; ++t) {
    const int input = out.graph.add_input(dsl::Value::observation(obs), t,
                                          previous ? std::vector<int>{*previous} : std::vector<int>{});
    recorder.set_step(t);
    dsl::EvalOptions opts;
    opts.step_budget = step_budget;
    opts.rng_seed = policy_seed(seed, t);
    opts.observer = &recorder;
    opts.arg_deps = {{input}};
    dsl::EvalResult r;
    try {
      r = dsl::evaluate_entry(program, obs, opts);
    } catch (const dsl::PolicyError& e) {
      out.error = "step " + std::to_string(t) + ": " + e.what();
      break;
    }
    if (auto problem = check_action(r.value, game); !problem.empty()) {
      out.error = "step " + std::to_string(t) + ": " + problem;
      break;
    }
    const int output = r.deps.empty() ? input : r.deps.back();
    const env::StepResult sr = env.step(static_cast<int>(r.value.as_number()));
    out.graph.set_step_output(t, output, StepOutput{sr.reward, opts.rng_seed});
    out.total_reward += sr.reward;
    out.steps = t + 1;
    obs = sr.obs;
    previous = output;
    if (sr.terminated) out.terminated = true;
    if (sr.terminated || sr.truncated) break;
  }
  out.last_obs = obs;
  return out;
}

std::string verify_replay(const TraceGraph& graph, const dsl::PolicyProgram& program,
                          int step_budget) {
  std::map<int, int> input_of;
  std::map<int, std::vector<int>> calls_of;
  for (const TraceNode& n : graph.nodes()) {
    if (n.kind == NodeKind::input) input_of.emplace(n.step, n.id);
    if (n.kind == NodeKind::call) calls_of[n.step].push_back(n.id);
  }
  for (const auto& [step, info] : graph.step_info()) {
    auto it = input_of.find(step);
    if (it == input_of.end()) return "step " + std::to_string(step) + " has no input node";
    const dsl::Value& snapshot = graph.node(it->second).output;
    if (!snapshot.is_observation()) return "step " + std::to_string(step) + " input is not an observation";
    CallLog log;
    dsl::EvalOptions opts;
    opts.step_budget = step_budget;
    opts.rng_seed = info.rng_seed;
    opts.observer = &log;
    dsl::EvalResult r;
    try {
      r = dsl::evaluate_entry(program, snapshot.as_observation(), opts);
    } catch (const dsl::PolicyError& e) {
      return "step " + std::to_string(step) + " failed on replay: " + e.what();
    }
    const auto& recorded = calls_of[step];
    if (recorded.size() != log.calls.size())
      return "step " + std::to_string(step) + ": " + std::to_string(log.calls.size()) +
             " calls on replay, " + std::to_string(recorded.size()) + " recorded";
    for (std::size_t i = 0; i < recorded.size(); ++i) {
      const TraceNode& n = graph.node(recorded[i]);
      if (n.function != log.calls[i].first || !dsl::equals(n.output, log.calls[i].second))
        return "step " + std::to_string(step) + ": call " + n.function + " recorded " +
               dsl::render(n.output) + ", replayed " + dsl::render(log.calls[i].second);
    }
    const TraceNode& out = graph.node(graph.outputs_per_step().at(step));
    if (out.kind == NodeKind::call && !dsl::equals(out.output, r.value))
      return "step " + std::to_string(step) + ": output recorded " + dsl::render(out.output) +
             ", replayed " + dsl::render(r.value);
  }
  return "";
}

}  // namespace codeplay::trace
