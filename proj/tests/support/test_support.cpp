#include "test_support.hpp"

#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include "codeplay/dsl/parser.hpp"

namespace codeplay::testing {

namespace fs = std::filesystem;

fs::path fixture_path(const std::string& relative) { return fs::path(CODEPLAY_FIXTURE_DIR) / relative; }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_fixture(const std::string& relative) { return read_file(fixture_path(relative)); }

std::string policy_fixture_name(Game game, const std::string& stage) {
  return std::string(to_string(game)) + "_" + stage;
}

const dsl::PolicyProgram& policy_fixture(Game game, const std::string& stage) {
  static std::mutex mu;
  static std::map<std::string, dsl::PolicyProgram> cache;
  std::lock_guard lock(mu);
  const std::string name = policy_fixture_name(game, stage);
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, dsl::parse(read_fixture("policies/" + name + ".pol"))).first;
  return it->second;
}

fs::path scratch_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const fs::path dir = fs::temp_directory_path() /
                       ("codeplay_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int scripted_action(Game game, int step) {
  const auto actions = action_set(game);
  const auto mix = static_cast<std::uint64_t>(step) * 2654435761ULL + static_cast<std::uint64_t>(step / 9);
  return actions[(mix >> 7) % actions.size()];
}

env::Observation random_observation(Game game, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return static_cast<int>(lo + rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  auto object = [&](int w, int h) {
    return env::ObjectState{pick(0, 160 - w), pick(0, 210 - h), w, h, pick(-6, 6), pick(-6, 6)};
  };
  env::Observation obs;
  obs.score = pick(0, 500);
  switch (game) {
    case Game::pong:
      obs.lives = 0;
      if (pick(0, 9) > 0) obs.objects["Ball"] = object(2, 4);
      if (pick(0, 9) > 0) obs.objects["Player"] = object(4, 16);
      if (pick(0, 9) > 0) obs.objects["Enemy"] = object(4, 16);
      obs.score = pick(-21, 21);
      break;
    case Game::breakout: {
      obs.lives = pick(0, 5);
      if (pick(0, 9) > 0) obs.objects["Ball"] = object(2, 4);
      obs.objects["Player"] = object(16, 4);
      const char* rows[] = {"RB", "OB", "YB", "GB", "AB", "BB"};
      for (int r = 0; r < 6; ++r) {
        if (pick(0, 5) == 0) continue;
        auto& row = obs.groups[rows[r]];
        for (int c = 0; c < 18; ++c)
          if (pick(0, 2) > 0) row.push_back({9 + 8 * c, 57 + 6 * r, 8, 6, 0, 0});
      }
      break;
    }
    case Game::space_invaders: {
      obs.lives = pick(0, 3);
      obs.objects["Player"] = object(7, 10);
      const int aliens = pick(0, 36);
      for (int i = 0; i < aliens; ++i) obs.objects["Alien" + std::to_string(pick(0, 35))] = object(8, 10);
      const int bullets = pick(0, 3);
      for (int i = 0; i < bullets; ++i) obs.objects["Bullet" + std::to_string(i)] = object(1, 4);
      for (int i = 0; i < 3; ++i)
        if (pick(0, 3) > 0) obs.objects["Shield" + std::to_string(i)] = object(10, 9);
      break;
    }
  }
  return obs;
}

}  // namespace codeplay::testing
