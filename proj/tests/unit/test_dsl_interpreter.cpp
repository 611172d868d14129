#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "codeplay/dsl/errors.hpp"
#include "codeplay/dsl/interpreter.hpp"
#include "codeplay/dsl/parser.hpp"
#include "codeplay/seeding.hpp"
#include "test_support.hpp"

using namespace codeplay;
using namespace codeplay::dsl;

namespace {

env::Observation pong_obs(int ball_x, int ball_y, int dx, int dy, int player_y = 100) {
  env::Observation obs;
  obs.objects["Player"] = {140, player_y, 4, 16, 0, 0};
  obs.objects["Enemy"] = {16, 100, 4, 16, 0, 0};
  obs.objects["Ball"] = {ball_x, ball_y, 2, 4, dx, dy};
  return obs;
}

// Unfolds straight-line motion onto the court [30, 190] as a triangle wave,
// then applies the fixture's final clamp to [40, 180].
double reflected_crossing(double x, double y, double dx, double dy) {
  const double t = (140.0 - x) / dx;
  const double p = y + dy * t;
  double m = std::fmod(p - 30.0, 320.0);
  if (m < 0) m += 320.0;
  const double folded = m <= 160.0 ? 30.0 + m : 30.0 + 320.0 - m;
  return std::clamp(folded, 40.0, 180.0);
}

double run_number(const char* source, const std::vector<Value>& args = {Value::none()}) {
  const PolicyProgram p = parse(source);
  return evaluate(p, p.entry, args).value.as_number();
}

}  // namespace

TEST_CASE("initial Pong select_action returns NOOP without a prediction") {
  const PolicyProgram& p = testing::policy_fixture(Game::pong, "initial");
  const Value obs = Value::observation(pong_obs(80, 100, 4, 2));
  const EvalResult r = evaluate(p, "select_action", {Value::none(), obs});
  REQUIRE(r.value.is_number());
  CHECK(r.value.as_number() == 0);
  CHECK(r.steps > 0);
}

TEST_CASE("best Pong prediction matches a closed-form reflection oracle") {
  const PolicyProgram& p = testing::policy_fixture(Game::pong, "best");
  SUBCASE("worked example") {
    const auto r = evaluate(p, "predict_ball_trajectory",
                            {Value::observation(pong_obs(100, 100, 4, 2))});
    CHECK(r.value.as_number() == doctest::Approx(120.0));
  }
  SUBCASE("double reflection") {
    const auto r = evaluate(p, "predict_ball_trajectory",
                            {Value::observation(pong_obs(20, 180, 4, 6))});
    CHECK(r.value.as_number() == doctest::Approx(reflected_crossing(20, 180, 4, 6)));
    CHECK(r.value.as_number() == doctest::Approx(40.0));
  }
  SUBCASE("random states") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 500; ++i) {
      const int x = 20 + static_cast<int>(rng() % 120);
      const int y = 30 + static_cast<int>(rng() % 161);
      const int dx = (rng() % 2 ? 4 : -4);
      const int dy = static_cast<int>(rng() % 13) - 6;
      CAPTURE(x);
      CAPTURE(y);
      CAPTURE(dx);
      CAPTURE(dy);
      const auto r =
          evaluate(p, "predict_ball_trajectory", {Value::observation(pong_obs(x, y, dx, dy))});
      CHECK(r.value.as_number() == doctest::Approx(reflected_crossing(x, y, dx, dy)));
    }
  }
  SUBCASE("no ball") {
    env::Observation obs = pong_obs(0, 0, 0, 0);
    obs.objects.erase("Ball");
    CHECK(evaluate(p, "predict_ball_trajectory", {Value::observation(obs)}).value.is_none());
  }
}

TEST_CASE("step budget turns infinite loops into timeouts") {
  const PolicyProgram p = parse("@entry\nfn policy(obs) {\n    while true {\n        pass\n    }\n}\n");
  EvalOptions options;
  options.step_budget = 1000;
  try {
    evaluate(p, "policy", {Value::none()}, options);
    FAIL("expected a timeout");
  } catch (const BudgetExceededError& e) {
    CHECK(e.function() == "policy");
    CHECK(e.loc().line >= 3);
    CHECK(std::string(e.what()).find("timeout") != std::string::npos);
  }
}

TEST_CASE("runtime errors name the function and the statement") {
  const PolicyProgram p = parse(
      "@entry\nfn policy(obs) {\n    return helper(obs)\n}\n"
      "fn helper(obs) {\n    x = 1\n    return obs[\"Nope\"]\n}\n");
  env::Observation obs = pong_obs(80, 100, 4, 2);
  try {
    evaluate_entry(p, obs);
    FAIL("expected an error");
  } catch (const EvalError& e) {
    CHECK(e.function() == "helper");
    CHECK(e.loc().line == 7);
  }
  CHECK_THROWS_AS(run_number("@entry\nfn p(o) { return 1 / 0 }"), EvalError);
  CHECK_THROWS_AS(run_number("@entry\nfn p(o) { return 1 + \"a\" }"), EvalError);
  CHECK_THROWS_AS(run_number("@entry\nfn p(o) { return [1][3] }"), EvalError);
}

TEST_CASE("arithmetic, control flow and builtins") {
  CHECK(run_number("@entry\nfn p(o) { return 7 % 3 + 2 * 3 - 1 / 4 }") == doctest::Approx(6.75));
  CHECK(run_number("@entry\nfn p(o) { return floor(-2.5) }") == -3);
  CHECK(run_number("@entry\nfn p(o) { return max(1, min(5, abs(-4))) }") == 4);
  CHECK(run_number("@entry\nfn p(o) { return len([1, 2, 3]) }") == 3);
  CHECK(run_number(
            "@entry\nfn p(o) {\n    t = 0\n    for i in range(10) {\n"
            "        if i == 3 { continue }\n        if i == 6 { break }\n        t += i\n    }\n"
            "    return t\n}\n") == 0 + 1 + 2 + 4 + 5);
  CHECK(run_number("@entry\nfn p(o) {\n    n = 0\n    while n < 5 { n += 1 }\n    return n\n}\n") == 5);
  CHECK(run_number("@entry\nfn p(o) { if none or 0 or \"\" or [] { return 1 } else { return 2 } }") == 2);
  CHECK(run_number("@entry\nfn p(o) { if starts_with(\"Alien3\", \"Alien\") { return 1 } return 0 }") == 1);
}

TEST_CASE("observations iterate and index like maps") {
  const PolicyProgram p = parse(
      "@entry\nfn policy(obs) {\n    n = 0\n    for label, o in obs {\n"
      "        if starts_with(label, \"Alien\") { n += get(o, \"x\", 0) }\n    }\n"
      "    if \"Player\" in obs and \"Ghost\" not in obs { n += 1000 }\n    return n\n}\n");
  env::Observation obs;
  obs.objects["Alien0"] = {10, 5, 8, 10, 0, 0};
  obs.objects["Alien7"] = {30, 5, 8, 10, 0, 0};
  obs.objects["Player"] = {70, 185, 7, 10, 0, 0};
  CHECK(evaluate_entry(p, obs).value.as_number() == 1040);
}

TEST_CASE("policies cannot modify their arguments") {
  const PolicyProgram p = parse(
      "@entry\nfn policy(obs) {\n    ball = obs[\"Ball\"]\n    touch(obs)\n    obs = 5\n"
      "    ball = 0\n    return 0\n}\n"
      "fn touch(o) {\n    o = none\n    return 0\n}\n");
  const env::Observation obs = pong_obs(80, 100, 4, 2);
  const env::Observation copy = obs;
  const Value arg = Value::observation(obs);
  evaluate(p, "policy", {arg});
  CHECK(arg.as_observation() == copy);
  CHECK(obs == copy);
}

TEST_CASE("random builtins replay from the seed") {
  const PolicyProgram& p = testing::policy_fixture(Game::pong, "initial");
  const env::Observation obs = pong_obs(80, 100, 4, 2);
  std::set<double> seen;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    EvalOptions options;
    options.rng_seed = policy_seed(seed, 3);
    const double a = evaluate_entry(p, obs, options).value.as_number();
    const double b = evaluate_entry(p, obs, options).value.as_number();
    CHECK(a == b);
    seen.insert(a);
  }
  CHECK(seen == std::set<double>{2, 3});

  const PolicyProgram u = parse("@entry\nfn p(o) { return random_uniform(2, 5) }");
  EvalOptions options;
  options.rng_seed = 9;
  const double x = evaluate(u, "p", {Value::none()}, options).value.as_number();
  CHECK(x >= 2);
  CHECK(x <= 5);
  CHECK(evaluate(u, "p", {Value::none()}, options).value.as_number() == x);
}

TEST_CASE("fixtures return legal actions on random valid observations") {
  for (Game game : kAllGames) {
    for (const std::string stage : {"initial", "best"}) {
      const PolicyProgram& p = testing::policy_fixture(game, stage);
      CAPTURE(testing::policy_fixture_name(game, stage));
      int failures = 0;
      for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const env::Observation obs = testing::random_observation(game, seed);
        EvalOptions options;
        options.rng_seed = seed;
        try {
          const Value v = evaluate_entry(p, obs, options).value;
          if (!v.is_number() || !is_legal_action(game, static_cast<int>(v.as_number())) ||
              v.as_number() != std::floor(v.as_number()))
            ++failures;
        } catch (const PolicyError& e) {
          MESSAGE(std::string(e.what()));
          ++failures;
        }
      }
      CHECK(failures == 0);
    }
  }
}

TEST_CASE("booleans and numbers stay distinct") {
  CHECK_FALSE(equals(Value(true), Value(1)));
  CHECK(equals(Value(ValueList{1, "a"}), Value(ValueList{1.0, std::string("a")})));
  CHECK(truthy(Value(0.5)));
  CHECK_FALSE(truthy(Value::observation({})));
  CHECK(type_name(Value::none()) == "none");
}
