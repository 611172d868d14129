#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "codeplay/dsl/interface.hpp"
#include "codeplay/dsl/metrics.hpp"
#include "codeplay/dsl/parser.hpp"
#include "codeplay/env/arcade_env.hpp"
#include "codeplay/feedback/evaluation.hpp"
#include "codeplay/feedback/stages.hpp"
#include "codeplay/harness/train.hpp"
#include "codeplay/trace/backward.hpp"
#include "codeplay/trace/prompt_slice.hpp"
#include "codeplay/trace/serialization.hpp"
#include "codeplay/trace/traced_rollout.hpp"

namespace codeplay::cli {

namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path& path) {
  if (!fs::exists(path)) throw IoError("file not found: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

dsl::PolicyProgram load_policy(const fs::path& path, Game game) {
  dsl::PolicyProgram program;
  try {
    program = dsl::parse(read_text(path));
  } catch (const dsl::SyntaxError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  if (auto violations = dsl::validate_for_game(program, game); !violations.empty()) {
    std::string msg = path.string() + ": policy does not fit the " + std::string(to_string(game)) + " interface";
    for (const auto& v : violations) msg += "\n  " + v;
    throw ConfigError(msg);
  }
  return program;
}

struct TrainArgs {
  std::string config;
  std::vector<std::string> sets;
  std::string game, policy, run_dir, backend, mock_script, feedback_mode, eval_seeds;
  std::optional<int> iterations, rollout_steps, eval_len;
  std::optional<std::uint64_t> seed;
};

int cmd_train(const TrainArgs& a, std::ostream& out) {
  harness::RunConfig config = a.config.empty() ? harness::RunConfig{} : harness::load_run_config(a.config);
  auto set = [&](const char* key, const std::string& v) {
    if (!v.empty()) harness::set_option(config, key, v, fs::current_path());
  };
  set("game", a.game);
  set("policy", a.policy);
  set("run_dir", a.run_dir);
  set("backend", a.backend);
  set("mock_script", a.mock_script);
  set("feedback_mode", a.feedback_mode);
  set("eval_seeds", a.eval_seeds);
  if (a.iterations) config.iterations = *a.iterations;
  if (a.rollout_steps) config.rollout_steps = *a.rollout_steps;
  if (a.eval_len) config.eval_len = *a.eval_len;
  if (a.seed) config.seed = *a.seed;
  for (const auto& kv : a.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    harness::set_option(config, kv.substr(0, eq), kv.substr(eq + 1), fs::current_path());
  }

  harness::TrainHooks hooks;
  hooks.on_iteration = [&](const harness::IterationEntry& e) {
    out << "iteration " << e.iteration << ": rollout " << feedback::format_score(e.rollout_reward)
        << ", eval " << feedback::format_score(e.eval_reward) << ", "
        << (e.update_accepted ? "update applied" : "no change") << "\n";
  };
  const harness::RunRecord record = harness::train(config, hooks);
  out << "best: iteration " << record.best.iteration << ", eval "
      << feedback::format_score(record.best.eval_reward) << "\n"
      << "run directory: " << config.run_dir.string() << "\n";
  return record.backend_failures() > 0 ? kExitBackend : kExitOk;
}

int cmd_eval(const std::string& policy, const std::string& game_name, int episodes,
             std::uint64_t seed, int episode_len, std::ostream& out) {
  const Game game = parse_game(game_name);
  const dsl::PolicyProgram program = load_policy(policy, game);
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < episodes; ++i) seeds.push_back(seed + static_cast<std::uint64_t>(i));
  const auto report = feedback::evaluate_policy(program, game, episode_len, seeds);
  for (std::size_t i = 0; i < report.episodes.size(); ++i) {
    const auto& e = report.episodes[i];
    out << "episode " << i << " (seed " << e.seed << "): reward " << feedback::format_score(e.reward)
        << ", steps " << e.steps << ", life losses " << e.life_losses;
    if (!e.error.empty()) out << ", error: " << e.error;
    out << "\n";
  }
  out << "mean reward: " << feedback::format_score(report.mean_reward) << "\n";
  return kExitOk;
}

int cmd_metrics(const std::vector<std::string>& files, std::ostream& out) {
  std::vector<dsl::MetricsRow> rows;
  bool failed = false;
  for (const auto& f : files) {
    dsl::MetricsRow row;
    row.stage = fs::path(f).stem().string();
    try {
      row.metrics = dsl::code_metrics(dsl::parse(read_text(f)));
    } catch (const Error& e) {
      row.error = e.what();
      failed = true;
    }
    rows.push_back(std::move(row));
  }
  out << dsl::render_metrics_table(rows);
  return failed ? kExitIo : kExitOk;
}

int cmd_trace_dump(const std::string& run_dir, int iteration, const std::string& output,
                   std::ostream& out) {
  const fs::path file = harness::iteration_dir(run_dir, iteration) / "trace.json";
  if (iteration < 1 || !fs::exists(file))
    throw IoError("no trace for iteration " + std::to_string(iteration) + " in " + run_dir);
  const std::string text = read_text(file);
  const trace::TraceGraph graph = trace::from_json(text);
  if (output.empty() || output == "-") {
    out << text;
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f || !(f << text)) throw IoError("cannot write " + output);
    out << "wrote " << graph.size() << " nodes, " << graph.outputs_per_step().size()
        << " steps to " << output << "\n";
  }
  return kExitOk;
}

int cmd_rollout(const std::string& policy, const std::string& game_name, std::optional<int> steps,
                std::uint64_t seed, bool show_slice, int budget, const std::string& dump,
                std::ostream& out) {
  const Game game = parse_game(game_name);
  const dsl::PolicyProgram program = load_policy(policy, game);
  const auto r = trace::traced_rollout(program, game, seed, steps.value_or(default_rollout_steps(game)));
  out << "steps " << r.steps << ", reward " << r.total_reward << ", nodes " << r.graph.size()
      << (r.terminated ? ", game over" : "") << "\n";
  if (!r.error.empty()) out << "policy error: " << r.error << "\n";
  if (!dump.empty()) {
    std::ofstream f(dump, std::ios::binary);
    if (!f || !(f << trace::to_json(r.graph) << "\n")) throw IoError("cannot write " + dump);
  }
  if (show_slice) {
    std::vector<trace::FeedbackBinding> bindings;
    if (auto target = r.graph.last_output()) bindings = trace::backward(r.graph, *target, "");
    out << trace::extract_prompt_slice(r.graph, bindings, budget);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Train and inspect program policies for built-in arcade games.", "codeplay"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Run the optimization loop.");
  train_cmd->add_option("-c,--config", train.config, "key = value run config file");
  train_cmd->add_option("--game", train.game, "pong, breakout or space_invaders");
  train_cmd->add_option("--policy", train.policy, "initial policy file");
  train_cmd->add_option("--run-dir", train.run_dir, "output directory");
  train_cmd->add_option("--iterations", train.iterations, "optimization iterations");
  train_cmd->add_option("--rollout-steps", train.rollout_steps, "traced rollout cap");
  train_cmd->add_option("--eval-len", train.eval_len, "full-game episode length");
  train_cmd->add_option("--eval-seeds", train.eval_seeds, "comma separated evaluation seeds");
  train_cmd->add_option("--seed", train.seed, "run seed");
  train_cmd->add_option("--feedback-mode", train.feedback_mode, "staged_full_game or rollout_only");
  train_cmd->add_option("--backend", train.backend, "mock or http");
  train_cmd->add_option("--mock-script", train.mock_script, "JSON script for the mock backend");
  train_cmd->add_option("--set", train.sets, "override any config key (key=value)");

  std::string eval_policy, eval_game;
  int eval_episodes = 3, eval_len = kDefaultEvalEpisodeLength;
  std::uint64_t eval_seed = 0;
  auto* eval_cmd = app.add_subcommand("eval", "Play full games and report rewards.");
  eval_cmd->add_option("policy", eval_policy, "policy file")->required();
  eval_cmd->add_option("--game", eval_game, "game")->required();
  eval_cmd->add_option("--episodes", eval_episodes, "number of episodes")->check(CLI::NonNegativeNumber);
  eval_cmd->add_option("--seed", eval_seed, "first episode seed");
  eval_cmd->add_option("--episode-len", eval_len, "step cap per episode")->check(CLI::NonNegativeNumber);

  std::vector<std::string> metric_files;
  auto* metrics_cmd = app.add_subcommand("metrics", "Print LOC, complexity and if-nesting per file.");
  metrics_cmd->add_option("files", metric_files, "policy files, one row each")->required();

  std::string dump_dir, dump_out;
  int dump_iteration = 0;
  auto* dump_cmd = app.add_subcommand("trace-dump", "Write one iteration's trace graph as JSON.");
  dump_cmd->add_option("run_dir", dump_dir, "run directory")->required();
  dump_cmd->add_option("iteration", dump_iteration, "iteration number (1-based)")->required();
  dump_cmd->add_option("-o,--output", dump_out, "output file (default stdout)");

  std::string ro_policy, ro_game, ro_dump;
  std::optional<int> ro_steps;
  std::uint64_t ro_seed = 0;
  bool ro_slice = false;
  int ro_budget = trace::kDefaultCharBudget;
  auto* rollout_cmd = app.add_subcommand("rollout", "Run one traced rollout.");
  rollout_cmd->add_option("policy", ro_policy, "policy file")->required();
  rollout_cmd->add_option("--game", ro_game, "game")->required();
  rollout_cmd->add_option("--steps", ro_steps, "step cap (default per game)");
  rollout_cmd->add_option("--seed", ro_seed, "environment seed");
  rollout_cmd->add_option("--dump", ro_dump, "write the trace graph JSON here");
  rollout_cmd->add_flag("--slice", ro_slice, "print the prompt slice");
  rollout_cmd->add_option("--budget", ro_budget, "slice character budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train_cmd) return cmd_train(train, out);
    if (*eval_cmd) return cmd_eval(eval_policy, eval_game, eval_episodes, eval_seed, eval_len, out);
    if (*metrics_cmd) return cmd_metrics(metric_files, out);
    if (*dump_cmd) return cmd_trace_dump(dump_dir, dump_iteration, dump_out, out);
    if (*rollout_cmd)
      return cmd_rollout(ro_policy, ro_game, ro_steps, ro_seed, ro_slice, ro_budget, ro_dump, out);
  } catch (const opt::BackendError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBackend;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace codeplay::cli
