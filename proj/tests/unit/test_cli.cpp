#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "codeplay/trace/serialization.hpp"
#include "test_support.hpp"

using namespace codeplay;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "codeplay");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string policy(const std::string& name) { return testing::fixture_path("policies/" + name + ".pol").string(); }

const fs::path& mock_run_dir() {
  static const fs::path dir = [] {
    const fs::path d = testing::scratch_dir("cli_train") / "run";
    const CliResult r = run({"train", "--config", testing::fixture_path("configs/pong_mock.cfg").string(),
                             "--run-dir", d.string(), "--iterations", "1"});
    REQUIRE_MESSAGE(r.code == cli::kExitOk, r.err);
    return d;
  }();
  return dir;
}

}  // namespace

TEST_CASE("eval prints one line per episode and the mean") {
  const CliResult r = run({"eval", policy("breakout_best"), "--game", "breakout", "--episodes", "2",
                           "--seed", "3", "--episode-len", "500"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.find("episode 0 (seed 3): reward ") == 0);
  CHECK(r.out.find("episode 1 (seed 4): reward ") != std::string::npos);
  CHECK(r.out.find("mean reward: ") != std::string::npos);
  CHECK(r.out.find(", steps 500") != std::string::npos);
}

TEST_CASE("eval rejects a policy for the wrong game") {
  const CliResult r = run({"eval", policy("pong_initial"), "--game", "breakout"});
  CHECK(r.code == cli::kExitIo);
  CHECK(r.err.find("select_paddle_action") != std::string::npos);
}

TEST_CASE("metrics keeps argument order") {
  const CliResult r = run({"metrics", policy("pong_best"), policy("pong_initial")});
  REQUIRE(r.code == cli::kExitOk);
  const auto best = r.out.find("pong_best");
  const auto initial = r.out.find("pong_initial");
  REQUIRE(best != std::string::npos);
  REQUIRE(initial != std::string::npos);
  CHECK(best < initial);
  CHECK(r.out.find("78") != std::string::npos);
  CHECK(r.out.find("24") != std::string::npos);
}

TEST_CASE("metrics needs at least one file") {
  const CliResult r = run({"metrics"});
  CHECK(r.code == cli::kExitUsage);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("missing files exit with the IO code") {
  const CliResult r = run({"metrics", "/nonexistent/a.pol"});
  CHECK(r.code == cli::kExitIo);
  CHECK(r.out.find("file not found: /nonexistent/a.pol") != std::string::npos);
  const CliResult e = run({"eval", "/nonexistent/a.pol", "--game", "pong"});
  CHECK(e.code == cli::kExitIo);
  CHECK(e.err.find("file not found: /nonexistent/a.pol") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"fly"}).code == cli::kExitUsage);
  CHECK(run({"eval", policy("pong_initial")}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);
  CHECK(run({"eval", policy("pong_initial"), "--game", "chess"}).code == cli::kExitIo);
}

TEST_CASE("train through the CLI writes a run directory") {
  const fs::path& dir = mock_run_dir();
  CHECK(fs::exists(dir / "record.json"));
  CHECK(fs::exists(dir / "iter_001" / "trace.json"));
  CHECK_FALSE(fs::exists(dir / "iter_002"));
}

TEST_CASE("train exits 3 when the backend fails") {
  const fs::path d = testing::scratch_dir("cli_backend") / "run";
  const CliResult r = run({"train", "--game", "pong", "--policy", policy("pong_initial"), "--run-dir", d.string(),
                           "--iterations", "1", "--eval-seeds", "0", "--eval-len", "200", "--mock-script",
                           testing::fixture_path("mock/pong_mixed.json").string(), "--set", "max_retries=0"});
  CHECK(r.code == cli::kExitBackend);
  CHECK(r.out.find("iteration 1:") != std::string::npos);
  CHECK(run({"train", "--game", "pong", "--policy", policy("pong_initial"), "--set", "bogus"}).code ==
        cli::kExitIo);
}

TEST_CASE("trace-dump") {
  const fs::path& dir = mock_run_dir();
  const CliResult r = run({"trace-dump", dir.string(), "1"});
  REQUIRE(r.code == cli::kExitOk);
  const trace::TraceGraph g = trace::from_json(r.out);
  CHECK(g.outputs_per_step().size() == 400);
  CHECK(trace::to_json(trace::from_json(r.out)) == trace::to_json(g));

  const fs::path file = dir.parent_path() / "dump.json";
  const CliResult w = run({"trace-dump", dir.string(), "1", "-o", file.string()});
  REQUIRE(w.code == cli::kExitOk);
  CHECK(w.out.find("400 steps") != std::string::npos);
  CHECK(testing::read_file(file) == r.out);

  CHECK(run({"trace-dump", dir.string(), "99"}).code == cli::kExitIo);
  CHECK(run({"trace-dump", dir.string(), "0"}).code == cli::kExitIo);
}

TEST_CASE("rollout prints a summary and an optional slice") {
  const fs::path dump = testing::scratch_dir("cli_rollout") / "trace.json";
  const CliResult r = run({"rollout", policy("space_invaders_best"), "--game", "space_invaders", "--seed", "2",
                           "--slice", "--dump", dump.string()});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.find("steps 15, reward ") == 0);
  CHECK(r.out.find("== step 14 ==") != std::string::npos);
  CHECK(trace::from_json(testing::read_file(dump)).outputs_per_step().size() == 15);
}
