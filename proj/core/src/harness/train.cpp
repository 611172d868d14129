#include "codeplay/harness/train.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "codeplay/dsl/formatter.hpp"
#include "codeplay/dsl/interface.hpp"
#include "codeplay/dsl/parser.hpp"
#include "codeplay/feedback/evaluation.hpp"
#include "codeplay/opt/prompt.hpp"
#include "codeplay/opt/update.hpp"
#include "codeplay/trace/backward.hpp"
#include "codeplay/trace/prompt_slice.hpp"
#include "codeplay/trace/serialization.hpp"
#include "codeplay/trace/traced_rollout.hpp"

namespace codeplay::harness {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("file not found: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void prepare_run_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create run directory " + dir.string());
  const fs::path probe = dir / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw IoError("run directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

std::string fixed(double v) { return feedback::format_score(v); }

nlohmann::ordered_json metrics_json(const dsl::CodeMetrics& m) {
  return {{"loc", m.loc}, {"cyclomatic", m.cyclomatic}, {"max_if_nesting", m.max_if_nesting}};
}

}  // namespace

int RunRecord::backend_failures() const {
  int n = 0;
  for (const auto& e : iterations) n += e.backend_failed ? 1 : 0;
  return n;
}

std::string record_to_json(const RunRecord& r) {
  nlohmann::ordered_json j;
  j["game"] = std::string(to_string(r.game));
  j["feedback_mode"] = std::string(feedback::to_string(r.feedback_mode));
  j["initial"] = {{"eval_reward", r.initial_eval_reward}, {"metrics", metrics_json(r.initial_metrics)}};
  auto& its = j["iterations"] = nlohmann::ordered_json::array();
  for (const auto& e : r.iterations) {
    its.push_back({{"iteration", e.iteration},
                   {"rollout_seed", e.rollout_seed},
                   {"rollout_reward", e.rollout_reward},
                   {"rollout_steps", e.rollout_steps},
                   {"eval_reward", e.eval_reward},
                   {"feedback_text", e.feedback_text},
                   {"update_accepted", e.update_accepted},
                   {"rejection", e.rejection},
                   {"backend_failed", e.backend_failed},
                   {"metrics", metrics_json(e.metrics)}});
  }
  j["best"] = {{"iteration", r.best.iteration},
               {"eval_reward", r.best.eval_reward},
               {"program", r.best.program}};
  return j.dump(2) + "\n";
}

fs::path iteration_dir(const fs::path& run_dir, int iteration) {
  char name[32];
  std::snprintf(name, sizeof name, "iter_%03d", iteration);
  return run_dir / name;
}

RunRecord train(const RunConfig& config, const TrainHooks& hooks) {
  validate(config);
  const std::string source = read_file(config.policy);
  dsl::PolicyProgram program;
  try {
    program = dsl::parse(source);
  } catch (const dsl::SyntaxError& e) {
    throw ConfigError(config.policy.string() + ": " + e.what());
  }
  if (auto violations = dsl::validate_for_game(program, config.game); !violations.empty())
    throw ConfigError(config.policy.string() + ": " + violations.front());

  const feedback::StageRules rules = config.stage_rules.empty()
                                         ? feedback::StageRules::defaults()
                                         : feedback::StageRules::load(config.stage_rules);
  if (config.feedback_mode == feedback::FeedbackMode::staged_full_game) {
    const auto games = rules.games();
    if (std::find(games.begin(), games.end(), to_string(config.game)) == games.end())
      throw ConfigError("stage rules have no entry for " + std::string(to_string(config.game)));
  }

  std::unique_ptr<opt::Backend> owned;
  opt::Backend* backend = hooks.backend;
  if (!backend) {
    owned = opt::make_backend(config.optimizer);
    backend = owned.get();
  }

  prepare_run_dir(config.run_dir);
  write_file(config.run_dir / "config.txt", render_run_config(config));
  std::ofstream log(config.run_dir / "run.log", std::ios::binary);
  if (!log) throw IoError("cannot write " + (config.run_dir / "run.log").string());

  auto evaluate = [&](const dsl::PolicyProgram& p) {
    return feedback::evaluate_policy(p, config.game, config.eval_len, config.eval_seeds,
                                     config.step_budget);
  };

  RunRecord record;
  record.game = config.game;
  record.feedback_mode = config.feedback_mode;
  feedback::EvaluationReport current_eval = evaluate(program);
  record.initial_eval_reward = current_eval.mean_reward;
  record.initial_metrics = dsl::code_metrics(program);
  record.best = {0, dsl::format(program), current_eval.mean_reward};

  fs::create_directories(iteration_dir(config.run_dir, 0));
  write_file(iteration_dir(config.run_dir, 0) / "policy.pol", dsl::format(program));
  log << "iteration 0: eval_reward=" << fixed(current_eval.mean_reward) << "\n";

  opt::OptimizerMemory memory(static_cast<std::size_t>(config.optimizer.memory_size));
  for (int i = 1; i <= config.iterations; ++i) {
    const fs::path dir = iteration_dir(config.run_dir, i);
    fs::create_directories(dir);
    IterationEntry entry;
    entry.iteration = i;
    entry.rollout_seed = static_cast<std::uint64_t>(i) ^ config.seed;

    trace::RolloutResult rollout =
        trace::traced_rollout(program, config.game, entry.rollout_seed,
                              config.effective_rollout_steps(), config.step_budget);
    entry.rollout_reward = rollout.total_reward;
    entry.rollout_steps = rollout.steps;
    write_file(dir / "trace.json", trace::to_json(rollout.graph) + "\n");

    std::string policy_error = rollout.error;
    if (config.feedback_mode == feedback::FeedbackMode::staged_full_game) {
      if (auto e = current_eval.first_error(); !e.empty())
        policy_error += (policy_error.empty() ? "" : "\n") + ("full-game evaluation, " + e);
    }
    const feedback::FeedbackReport report =
        feedback::make_feedback(rules, config.game, config.feedback_mode, current_eval.mean_reward,
                                rollout.total_reward, policy_error);
    entry.feedback_text = report.text;
    write_file(dir / "feedback.txt", report.text + "\n");

    std::vector<trace::FeedbackBinding> bindings;
    if (auto target = rollout.graph.last_output())
      bindings = trace::backward(rollout.graph, *target, report.text);

    std::string update_text;
    std::vector<std::string> transcript;
    try {
      const opt::PromptContext prompt =
          opt::build_prompt(rollout.graph, bindings, report, program, memory, config.optimizer);
      write_file(dir / "prompt.txt", prompt.render());
      const opt::Proposal proposal =
          opt::propose_update(prompt, program, *backend, config.optimizer, &transcript);
      update_text = opt::render_update(proposal.update);
      opt::ApplyResult applied = opt::apply_update(program, proposal.update, config.game);
      if (applied.accepted()) {
        entry.update_accepted = true;
        program = std::move(applied.program);
      } else {
        const auto& r = *applied.rejection;
        entry.rejection = r.function.empty() ? r.reason : r.function + ": " + r.reason;
      }
    } catch (const opt::BackendError& e) {
      entry.backend_failed = true;
      entry.rejection = std::string("backend failure: ") + e.what();
    } catch (const trace::SliceBudgetError& e) {
      entry.rejection = std::string("prompt budget: ") + e.what();
    }
    std::string responses;
    for (std::size_t k = 0; k < transcript.size(); ++k)
      responses += "=== response " + std::to_string(k + 1) + " ===\n" + transcript[k] +
                   (transcript[k].empty() || transcript[k].back() != '\n' ? "\n" : "");
    write_file(dir / "response.txt", responses);

    if (entry.update_accepted) current_eval = evaluate(program);
    entry.eval_reward = current_eval.mean_reward;
    entry.metrics = dsl::code_metrics(program);
    write_file(dir / "policy.pol", dsl::format(program));

    if (!update_text.empty() || entry.backend_failed) {
      std::string outcome =
          entry.update_accepted
              ? "applied; full-game reward afterwards: " + fixed(entry.eval_reward)
              : "rejected: " + entry.rejection;
      memory.push({i, update_text.empty() ? "(no update)\n" : update_text, outcome});
    }

    if (entry.eval_reward > record.best.eval_reward)
      record.best = {i, dsl::format(program), entry.eval_reward};

    log << "iteration " << i << ": rollout_seed=" << entry.rollout_seed
        << " rollout_reward=" << fixed(entry.rollout_reward)
        << " eval_reward=" << fixed(entry.eval_reward)
        << " accepted=" << (entry.update_accepted ? "yes" : "no");
    if (!entry.rejection.empty()) log << " reason=\"" << entry.rejection.substr(0, entry.rejection.find('\n')) << "\"";
    log << "\n";
    log.flush();

    record.iterations.push_back(entry);
    if (hooks.on_iteration) hooks.on_iteration(record.iterations.back());
  }

  write_file(config.run_dir / "best_policy.pol", record.best.program);
  write_file(config.run_dir / "record.json", record_to_json(record));
  log << "best: iteration " << record.best.iteration << " eval_reward="
      << fixed(record.best.eval_reward) << "\n";
  return record;
}

}  // namespace codeplay::harness
