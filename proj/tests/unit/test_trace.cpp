#include <doctest.h>

#include <algorithm>
#include <set>

#include "codeplay/dsl/formatter.hpp"
#include "codeplay/dsl/parser.hpp"
#include "codeplay/seeding.hpp"
#include "codeplay/trace/backward.hpp"
#include "codeplay/trace/graph.hpp"
#include "codeplay/trace/prompt_slice.hpp"
#include "codeplay/trace/serialization.hpp"
#include "codeplay/trace/traced_rollout.hpp"
#include "test_support.hpp"

using namespace codeplay;
using namespace codeplay::trace;

namespace {

std::set<int> ancestors(const TraceGraph& g, int start) {
  std::set<int> seen;
  std::vector<int> stack{start};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    for (int in : g.node(id).inputs) stack.push_back(in);
  }
  return seen;
}

std::set<int> descendants(const TraceGraph& g, const std::set<int>& starts) {
  std::vector<std::vector<int>> children(g.size() + 1);
  for (const auto& n : g.nodes())
    for (int in : n.inputs) children[static_cast<std::size_t>(in)].push_back(n.id);
  std::set<int> seen;
  std::vector<int> stack(starts.begin(), starts.end());
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    for (int c : children[static_cast<std::size_t>(id)]) stack.push_back(c);
  }
  return seen;
}

// Reference backward pass by plain graph search.
std::map<std::string, std::vector<int>> oracle_backward(const TraceGraph& g, int target) {
  const std::set<int> above = ancestors(g, target);
  std::map<std::string, std::set<int>> calls;
  for (int id : above) {
    const auto& n = g.node(id);
    if (n.kind != NodeKind::call) continue;
    for (int in : n.inputs)
      if (g.node(in).kind == NodeKind::parameter) calls[g.node(in).function].insert(id);
  }
  std::map<std::string, std::vector<int>> out;
  for (const auto& [fn, ids] : calls) {
    std::set<int> sub;
    for (int c : ids) {
      const auto a = ancestors(g, c);
      sub.insert(a.begin(), a.end());
    }
    for (int d : descendants(g, ids))
      if (above.count(d)) sub.insert(d);
    out[fn] = {sub.begin(), sub.end()};
  }
  return out;
}

const RolloutResult& pong_rollout() {
  static const RolloutResult r = traced_rollout(testing::policy_fixture(Game::pong, "best"),
                                                Game::pong, 5, default_rollout_steps(Game::pong));
  return r;
}

}  // namespace

TEST_CASE("graph assigns dense ids and rejects dangling inputs") {
  TraceGraph g;
  const int p = g.add_parameter("f", "fn f(x) { return x }");
  const int in = g.add_input(dsl::Value(1), 0);
  const int c = g.record_call("f", {p, in}, dsl::Value(2), 0);
  CHECK(p == 1);
  CHECK(in == 2);
  CHECK(c == 3);
  CHECK(g.parameter_of("f") == p);
  CHECK_FALSE(g.parameter_of("g").has_value());
  CHECK_THROWS_AS(g.record_call("f", {p, 17}, dsl::Value(0), 0), TraceError);
  CHECK_THROWS_AS(g.node(0), TraceError);
  CHECK_THROWS_AS(g.node(4), TraceError);
  g.set_step_output(0, c, {0, 42});
  CHECK_THROWS_AS(g.set_step_output(0, c, {0, 42}), TraceError);
  CHECK(g.last_output() == c);
  CHECK_NOTHROW(g.check_invariants());
}

TEST_CASE("backward on tiny graphs") {
  TraceGraph g;
  const int in = g.add_input(dsl::Value(1), 0);
  CHECK(backward(g, in, "fb").empty());
  CHECK_THROWS_AS(backward(g, 99, "fb"), TraceError);

  const int p = g.add_parameter("f", "code");
  const int c = g.record_call("f", {p}, dsl::Value(2), 0);
  const auto single = backward(g, c, "fb");
  REQUIRE(single.size() == 1);
  CHECK(single[0].parameter == "f");
  CHECK(single[0].subgraph == std::vector<int>{p, c});
  CHECK(single[0].feedback == "fb");

  const int q = g.add_parameter("g", "code");
  const int d = g.record_call("g", {in, q, c}, dsl::Value(3), 0);
  const auto both = backward(g, d, "fb");
  REQUIRE(both.size() == 2);
  CHECK(both[0].parameter == "f");
  CHECK(both[0].subgraph == std::vector<int>{p, c, d});
  CHECK(both[1].parameter == "g");
  CHECK(both[1].subgraph == std::vector<int>{in, p, c, q, d});
}

TEST_CASE("traced Pong rollout records every step") {
  const RolloutResult& r = pong_rollout();
  REQUIRE(r.error.empty());
  CHECK(r.steps == 400);
  CHECK(r.graph.outputs_per_step().size() == 400);
  CHECK(r.graph.step_info().size() == 400);
  CHECK_NOTHROW(r.graph.check_invariants());
  REQUIRE(r.graph.parameter_of("predict_ball_trajectory").has_value());
  REQUIRE(r.graph.parameter_of("select_action").has_value());

  int previous_output = 0;
  for (const auto& n : r.graph.nodes()) {
    if (n.kind != NodeKind::input) continue;
    if (n.step == 0) {
      CHECK(n.inputs.empty());
    } else {
      CHECK(n.inputs == std::vector<int>{previous_output});
    }
    previous_output = r.graph.outputs_per_step().at(n.step);
    CHECK(n.output.is_observation());
  }
  int reward = 0;
  for (const auto& [step, info] : r.graph.step_info()) {
    reward += info.reward;
    CHECK(info.rng_seed == policy_seed(5, step));
  }
  CHECK(reward == r.total_reward);
}

TEST_CASE("backward matches a reference graph search") {
  const RolloutResult& r = pong_rollout();
  const TraceGraph& g = r.graph;
  for (int target : {*g.last_output(), g.outputs_per_step().at(0), g.outputs_per_step().at(200)}) {
    CAPTURE(target);
    const auto bindings = backward(g, target, "feedback");
    const auto expected = oracle_backward(g, target);
    REQUIRE(bindings.size() == expected.size());
    for (const auto& b : bindings) {
      CAPTURE(b.parameter);
      CHECK(b.subgraph == expected.at(b.parameter));
      CHECK(std::is_sorted(b.subgraph.begin(), b.subgraph.end()));
    }
    for (std::size_t i = 1; i < bindings.size(); ++i)
      CHECK(*g.parameter_of(bindings[i - 1].parameter) < *g.parameter_of(bindings[i].parameter));
  }
}

TEST_CASE("prompt slice keeps the newest steps within budget") {
  const RolloutResult& r = pong_rollout();
  const auto bindings = backward(r.graph, *r.graph.last_output(), "fb");
  const std::string full = extract_prompt_slice(r.graph, bindings, 10'000'000);
  const auto all_steps = slice_steps(full);
  REQUIRE(all_steps.size() == 400);
  CHECK(all_steps.front() == 399);
  CHECK(all_steps.back() == 0);
  CHECK(full.find("omitted") == std::string::npos);

  const std::string cut = extract_prompt_slice(r.graph, bindings, 4000);
  CHECK(cut.size() <= 4000);
  const auto cut_steps = slice_steps(cut);
  REQUIRE_FALSE(cut_steps.empty());
  CHECK(cut_steps.front() == 399);
  CHECK(std::equal(cut_steps.begin(), cut_steps.end(), all_steps.begin()));
  CHECK(cut.find("older steps omitted") != std::string::npos);

  std::size_t previous = 0;
  for (int budget = 1500; budget <= 60000; budget += 2500) {
    const std::string s = extract_prompt_slice(r.graph, bindings, budget);
    CHECK(s.size() <= static_cast<std::size_t>(budget));
    const std::size_t n = slice_steps(s).size();
    CHECK(n >= previous);
    previous = n;
  }
  CHECK_THROWS_AS(extract_prompt_slice(r.graph, bindings, 40), SliceBudgetError);
}

TEST_CASE("slice renders objects with signed velocities") {
  const RolloutResult& r = pong_rollout();
  const auto bindings = backward(r.graph, *r.graph.last_output(), "fb");
  const std::string s = extract_prompt_slice(r.graph, bindings, 3000);
  CHECK(s.rfind("# trace of predict_ball_trajectory, select_action", 0) == 0);
  CHECK(s.find("== step 399 ==") != std::string::npos);
  CHECK(s.find("call predict_ball_trajectory -> ") != std::string::npos);
  CHECK(s.find("call select_action -> ") != std::string::npos);
  CHECK(s.find(" dx=") != std::string::npos);
  CHECK((s.find(" dx=+") != std::string::npos || s.find(" dx=-") != std::string::npos));

  const RolloutResult b =
      traced_rollout(testing::policy_fixture(Game::breakout, "best"), Game::breakout, 0, 5);
  const auto bb = backward(b.graph, *b.graph.last_output(), "fb");
  const std::string bs = extract_prompt_slice(b.graph, bb, 60000);
  CHECK(bs.find("RB ") != std::string::npos);
}

TEST_CASE("recorded rollouts replay exactly") {
  for (Game game : kAllGames) {
    for (const std::string stage : {"initial", "best"}) {
      CAPTURE(testing::policy_fixture_name(game, stage));
      const auto& program = testing::policy_fixture(game, stage);
      const RolloutResult r = traced_rollout(program, game, 3, default_rollout_steps(game));
      CHECK(verify_replay(r.graph, program).empty());
      CHECK(verify_replay(from_json(to_json(r.graph)), program).empty());
    }
  }
  const RolloutResult r = pong_rollout();
  CHECK_FALSE(verify_replay(r.graph, testing::policy_fixture(Game::pong, "initial")).empty());
}

TEST_CASE("traced rollouts are deterministic") {
  const auto& program = testing::policy_fixture(Game::breakout, "initial");
  const RolloutResult a = traced_rollout(program, Game::breakout, 9, 300);
  const RolloutResult b = traced_rollout(program, Game::breakout, 9, 300);
  CHECK(to_json(a.graph) == to_json(b.graph));
  CHECK(a.total_reward == b.total_reward);
  CHECK(a.steps == b.steps);
}

TEST_CASE("a crashing policy ends the rollout with an error") {
  const dsl::PolicyProgram p = dsl::parse(
      "@entry\nfn policy(obs) {\n    predicted_ball_y = predict_ball_trajectory(obs)\n"
      "    return select_action(predicted_ball_y, obs)\n}\n"
      "@trainable\nfn predict_ball_trajectory(obs) { return 0 }\n"
      "@trainable\nfn select_action(y, obs) {\n    if get(obs[\"Ball\"], \"x\", 0) > 120 { return obs[\"Nope\"] }\n"
      "    return 0\n}\n");
  const RolloutResult r = traced_rollout(p, Game::pong, 0, 400);
  CHECK_FALSE(r.error.empty());
  CHECK(r.steps < 400);
  CHECK(r.graph.outputs_per_step().size() == static_cast<std::size_t>(r.steps));
  CHECK(r.error.find("select_action") != std::string::npos);

  const dsl::PolicyProgram illegal = dsl::parse("@entry\nfn policy(obs) { return 1 }\n");
  const RolloutResult i = traced_rollout(illegal, Game::pong, 0, 10);
  CHECK(i.steps == 0);
  CHECK_FALSE(i.error.empty());
  CHECK(check_action(dsl::Value(1), Game::pong) != "");
  CHECK(check_action(dsl::Value(3), Game::pong) == "");
  CHECK(check_action(dsl::Value(2.5), Game::pong) != "");
  CHECK(check_action(dsl::Value(true), Game::pong) != "");
}

TEST_CASE("trace JSON round-trips and rejects malformed input") {
  const RolloutResult r =
      traced_rollout(testing::policy_fixture(Game::space_invaders, "best"), Game::space_invaders, 1, 15);
  const std::string text = to_json(r.graph, 2);
  const TraceGraph back = from_json(text);
  CHECK(to_json(back, 2) == text);
  CHECK(back.size() == r.graph.size());
  CHECK(back.outputs_per_step() == r.graph.outputs_per_step());
  CHECK_THROWS_AS(from_json("{"), TraceError);
  CHECK_THROWS_AS(from_json("[{\"id\": 1, \"kind\": \"call\", \"function\": \"f\", \"inputs\": [5], "
                            "\"step\": 0, \"output\": {\"type\": \"none\"}}]"),
                  TraceError);
  CHECK_THROWS_AS(from_json("[{\"id\": 2, \"kind\": \"input\", \"function\": \"\", \"inputs\": [], "
                            "\"step\": 0, \"output\": {\"type\": \"none\"}}]"),
                  TraceError);
  CHECK_THROWS_AS(parse_node_kind("edge"), TraceError);
}
