#include "codeplay/feedback/evaluation.hpp"

#include <future>

#include "codeplay/env/arcade_env.hpp"
#include "codeplay/seeding.hpp"
#include "codeplay/trace/traced_rollout.hpp"

namespace codeplay::feedback {

std::vector<std::uint64_t> default_eval_seeds() { return {0, 1, 2}; }

std::string EvaluationReport::first_error() const {
  for (const auto& e : episodes)
    if (!e.error.empty()) return "seed " + std::to_string(e.seed) + ", " + e.error;
  return "";
}

EpisodeResult play_episode(const dsl::PolicyProgram& program, Game game, std::uint64_t seed,
                           int episode_len, int step_budget) {
  EpisodeResult out;
  out.seed = seed;
  if (episode_len <= 0) return out;

  env::ArcadeEnv env({game, seed, episode_len});
  env::Observation obs = env.reset();
  for (int t = 0; t < episode_len; ++t) {
    dsl::EvalOptions opts;
    opts.step_budget = step_budget;
    opts.rng_seed = policy_seed(seed, t);
    dsl::Value action;
    try {
      action = dsl::evaluate_entry(program, obs, opts).value;
    } catch (const dsl::PolicyError& e) {
      out.error = "step " + std::to_string(t) + ": " + e.what();
      break;
    }
    if (auto problem = trace::check_action(action, game); !problem.empty()) {
      out.error = "step " + std::to_string(t) + ": " + problem;
      break;
    }
    const int lives_before = obs.lives;
    env::StepResult r = env.step(static_cast<int>(action.as_number()));
    out.reward += r.reward;
    out.steps = t + 1;
    if (r.obs.lives < lives_before) out.life_losses += lives_before - r.obs.lives;
    obs = std::move(r.obs);
    if (r.terminated) out.terminated = true;
    if (r.terminated || r.truncated) break;
  }
  return out;
}

EvaluationReport evaluate_policy(const dsl::PolicyProgram& program, Game game, int episode_len,
                                 const std::vector<std::uint64_t>& seeds, int step_budget,
                                 bool parallel) {
  EvaluationReport report;
  if (parallel && seeds.size() > 1) {
    std::vector<std::future<EpisodeResult>> jobs;
    for (auto seed : seeds)
      jobs.push_back(std::async(std::launch::async, [&, seed] {
        return play_episode(program, game, seed, episode_len, step_budget);
      }));
    for (auto& j : jobs) report.episodes.push_back(j.get());
  } else {
    for (auto seed : seeds) report.episodes.push_back(play_episode(program, game, seed, episode_len, step_budget));
  }
  double total = 0.0;
  for (const auto& e : report.episodes) total += e.reward;
  if (!report.episodes.empty()) report.mean_reward = total / static_cast<double>(report.episodes.size());
  return report;
}

}  // namespace codeplay::feedback
