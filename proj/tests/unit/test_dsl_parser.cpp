#include <doctest.h>

#include "codeplay/dsl/errors.hpp"
#include "codeplay/dsl/formatter.hpp"
#include "codeplay/dsl/interface.hpp"
#include "codeplay/dsl/parser.hpp"
#include "test_support.hpp"

using namespace codeplay;
using namespace codeplay::dsl;

namespace {

const char* kSmall = R"(
@entry
fn policy(obs) {
    x = helper(obs, 2)   # comment dropped by the formatter
    return x
}

@trainable
fn helper(obs, k) {
    """Doubles k."""
    total = 0
    for i in range(k) { total += 2 }
    if total > 3 and k != 0 { return total } elif total == 3 { return -1 } else { pass }
    while false { break }
    return [total, k * (1 + 2), "s", true, none, not false, -k]
}
)";

SyntaxError syntax_error_of(std::string_view source) {
  try {
    parse(source);
  } catch (const SyntaxError& e) {
    return e;
  }
  FAIL("expected a syntax error");
  return SyntaxError({}, "");
}

}  // namespace

TEST_CASE("parse records decorators, docstrings and the entry") {
  const PolicyProgram p = parse(kSmall);
  CHECK(p.entry == "policy");
  REQUIRE(p.functions.size() == 2);
  const FunctionDef* helper = p.find("helper");
  REQUIRE(helper != nullptr);
  CHECK(helper->trainable);
  CHECK_FALSE(helper->entry);
  CHECK(helper->params == std::vector<std::string>{"obs", "k"});
  REQUIRE(helper->docstring.has_value());
  CHECK(*helper->docstring == "Doubles k.");
  CHECK(p.trainable_names() == std::vector<std::string>{"helper"});
  CHECK(p.index_of("policy") == 0);
  CHECK(p.index_of("missing") == -1);
}

TEST_CASE("format is a fixed point and round-trips structurally") {
  const PolicyProgram p = parse(kSmall);
  const std::string once = format(p);
  const PolicyProgram q = parse(once);
  CHECK(structurally_equal(p, q));
  CHECK(format(q) == once);
  CHECK(once.find("comment dropped") == std::string::npos);
  CHECK(once.find("k * (1 + 2)") != std::string::npos);
}

TEST_CASE("every fixture formats to its golden file and round-trips") {
  for (Game game : kAllGames) {
    for (const std::string stage : {"initial", "best"}) {
      const std::string name = testing::policy_fixture_name(game, stage);
      CAPTURE(name);
      const PolicyProgram& p = testing::policy_fixture(game, stage);
      const std::string formatted = format(p);
      CHECK(formatted == testing::read_fixture("golden/" + name + ".formatted.pol"));
      const PolicyProgram again = parse(formatted);
      CHECK(structurally_equal(p, again));
      CHECK(format(again) == formatted);
      CHECK(validate_for_game(p, game).empty());
    }
  }
}

TEST_CASE("syntax errors carry a location") {
  SUBCASE("unclosed brace") {
    const SyntaxError e = syntax_error_of("@entry\nfn policy(obs) {\n    return 1\n");
    CHECK(e.loc().line >= 3);
  }
  SUBCASE("undeclared identifier") {
    const SyntaxError e = syntax_error_of("@entry\nfn policy(obs) {\n    return y\n}\n");
    CHECK(e.loc().line == 3);
    CHECK(e.loc().col == 12);
    CHECK(std::string(e.what()).rfind("line 3, col 12: ", 0) == 0);
  }
  SUBCASE("unknown callee") {
    CHECK(syntax_error_of("@entry\nfn policy(obs) {\n    return nope(obs)\n}\n").loc().line == 3);
  }
  SUBCASE("arity mismatch") {
    CHECK_THROWS_AS(parse("@entry\nfn policy(obs) { return f(1, 2) }\nfn f(a) { return a }\n"),
                    SyntaxError);
  }
  SUBCASE("recursion") {
    CHECK_THROWS_AS(parse("@entry\nfn policy(obs) { return f(1) }\nfn f(a) { return f(a) }\n"),
                    SyntaxError);
    CHECK_THROWS_AS(parse("@entry\nfn policy(obs) { return f(1) }\n"
                          "fn f(a) { return g(a) }\nfn g(a) { return f(a) }\n"),
                    SyntaxError);
  }
  SUBCASE("entry missing or duplicated") {
    CHECK_THROWS_AS(parse("fn policy(obs) { return 0 }\n"), SyntaxError);
    CHECK_THROWS_AS(parse("@entry\nfn a(obs) { return 0 }\n@entry\nfn b(obs) { return 0 }\n"),
                    SyntaxError);
  }
  SUBCASE("duplicate function") {
    CHECK_THROWS_AS(parse("@entry\nfn a(obs) { return 0 }\nfn a(obs) { return 1 }\n"), SyntaxError);
  }
  SUBCASE("break outside a loop") {
    CHECK_THROWS_AS(parse("@entry\nfn a(obs) { break }\n"), SyntaxError);
  }
}

TEST_CASE("an empty body formats as return none") {
  const PolicyProgram p = parse("@entry\nfn policy(obs) {\n}\n");
  CHECK(format(p).find("    return none\n") != std::string::npos);
  const PolicyProgram q = parse("@entry\nfn policy(obs) {\n    \"\"\"Only a docstring.\"\"\"\n}\n");
  CHECK(format(q).find("return none") != std::string::npos);
}

TEST_CASE("body and function snippets parse on their own") {
  const ParsedBody body = parse_body("\"\"\"New doc.\"\"\"\nx = 1\nreturn x + undefined_name\n");
  REQUIRE(body.docstring.has_value());
  CHECK(*body.docstring == "New doc.");
  CHECK(body.stmts.size() == 2);
  CHECK_THROWS_AS(parse_body("x = (1 +\n"), SyntaxError);

  const FunctionDef f = parse_function("@trainable\nfn helper(a) { return a }");
  CHECK(f.name == "helper");
  CHECK(f.trainable);
  CHECK_THROWS_AS(parse_function("x = 1"), SyntaxError);
}

TEST_CASE("format_number renders shortest decimals") {
  CHECK(format_number(3.0) == "3");
  CHECK(format_number(-19.0) == "-19");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(0.1 + 0.2) == "0.30000000000000004");
  CHECK(format_number(-0.0) == "0");
}

TEST_CASE("validate_interface reports each violation by name") {
  const PolicyProgram& pong = testing::policy_fixture(Game::pong, "initial");
  CHECK(validate_for_game(pong, Game::pong).empty());
  const auto wrong = validate_for_game(pong, Game::breakout);
  REQUIRE(wrong.size() == 2);
  CHECK(wrong[0].find("generate_paddle_target") != std::string::npos);
  CHECK(wrong[1].find("select_paddle_action") != std::string::npos);

  const PolicyProgram bad = parse(
      "@entry\nfn policy(obs) { return select_action(predict_ball_trajectory(obs)) }\n"
      "fn predict_ball_trajectory(obs) { return 1 }\n"
      "@trainable\nfn select_action(y) { return 0 }\n");
  const auto problems = validate_for_game(bad, Game::pong);
  REQUIRE(problems.size() == 2);
  CHECK(problems[0].find("predict_ball_trajectory") != std::string::npos);
  CHECK(problems[1].find("select_action") != std::string::npos);

  CHECK(validate_interface(bad, {{"extra", 0, false}}).size() == 1);
  CHECK(validate_interface(bad, {}).empty());
}
