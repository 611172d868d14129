#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

#include "codeplay/dsl/formatter.hpp"
#include "codeplay/dsl/interpreter.hpp"
#include "codeplay/dsl/metrics.hpp"
#include "codeplay/dsl/parser.hpp"
#include "codeplay/env/arcade_env.hpp"
#include "codeplay/feedback/evaluation.hpp"
#include "codeplay/opt/update.hpp"
#include "codeplay/trace/backward.hpp"
#include "codeplay/trace/prompt_slice.hpp"
#include "codeplay/trace/traced_rollout.hpp"

using namespace codeplay;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(CODEPLAY_FIXTURE_DIR) + "/policies/" + name + ".pol");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Game game_arg(const benchmark::State& state) { return kAllGames[static_cast<std::size_t>(state.range(0))]; }

void BM_ParseBest(benchmark::State& state) {
  const std::string src = fixture(std::string(to_string(game_arg(state))) + "_best");
  for (auto _ : state) benchmark::DoNotOptimize(dsl::parse(src));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * src.size()));
}
BENCHMARK(BM_ParseBest)->DenseRange(0, 2);

void BM_FormatAndMetrics(benchmark::State& state) {
  const auto program = dsl::parse(fixture(std::string(to_string(game_arg(state))) + "_best"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dsl::format(program));
    benchmark::DoNotOptimize(dsl::code_metrics(program));
  }
}
BENCHMARK(BM_FormatAndMetrics)->DenseRange(0, 2);

void BM_EvaluateEntry(benchmark::State& state) {
  const Game game = game_arg(state);
  const auto program = dsl::parse(fixture(std::string(to_string(game)) + "_best"));
  const auto& obs = opt::smoke_observation(game);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    dsl::EvalOptions opts;
    opts.rng_seed = seed++;
    benchmark::DoNotOptimize(dsl::evaluate_entry(program, obs, opts));
  }
}
BENCHMARK(BM_EvaluateEntry)->DenseRange(0, 2);

void BM_EnvStep(benchmark::State& state) {
  const Game game = game_arg(state);
  env::ArcadeEnv env({game, 0, 1 << 30});
  env.reset();
  const auto actions = action_set(game);
  std::size_t i = 0;
  for (auto _ : state) {
    auto r = env.step(actions[i++ % actions.size()]);
    if (r.terminated) {
      state.PauseTiming();
      env.reset();
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_EnvStep)->DenseRange(0, 2);

void BM_TracedRollout(benchmark::State& state) {
  const Game game = game_arg(state);
  const auto program = dsl::parse(fixture(std::string(to_string(game)) + "_best"));
  for (auto _ : state)
    benchmark::DoNotOptimize(trace::traced_rollout(program, game, 0, default_rollout_steps(game)));
}
BENCHMARK(BM_TracedRollout)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_BackwardAndSlice(benchmark::State& state) {
  const Game game = game_arg(state);
  const auto program = dsl::parse(fixture(std::string(to_string(game)) + "_best"));
  const auto rollout = trace::traced_rollout(program, game, 0, default_rollout_steps(game));
  const int target = *rollout.graph.last_output();
  for (auto _ : state) {
    const auto bindings = trace::backward(rollout.graph, target, "feedback");
    benchmark::DoNotOptimize(trace::extract_prompt_slice(rollout.graph, bindings));
  }
}
BENCHMARK(BM_BackwardAndSlice)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_FullGameEvaluation(benchmark::State& state) {
  const Game game = game_arg(state);
  const auto program = dsl::parse(fixture(std::string(to_string(game)) + "_best"));
  for (auto _ : state)
    benchmark::DoNotOptimize(feedback::evaluate_policy(program, game, kDefaultEvalEpisodeLength, {0}));
}
BENCHMARK(BM_FullGameEvaluation)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
