#include "codeplay/harness/run_config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "codeplay/error.hpp"

namespace codeplay::harness {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_integer(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || value.empty())
    throw ConfigError("option '" + std::string(key) + "' expects an integer, got '" +
                      std::string(value) + "'");
  return out;
}

std::filesystem::path resolve(std::string_view value, const std::filesystem::path& base) {
  std::filesystem::path p{std::string(value)};
  if (p.is_relative() && !base.empty()) p = base / p;
  return p;
}

}  // namespace

void set_option(RunConfig& c, std::string_view key, std::string_view raw,
                const std::filesystem::path& base) {
  const std::string value = trim(raw);
  auto& o = c.optimizer;
  if (key == "game") {
    c.game = parse_game(value);
  } else if (key == "policy") {
    c.policy = resolve(value, base);
  } else if (key == "iterations") {
    c.iterations = parse_integer<int>(key, value);
  } else if (key == "rollout_steps") {
    if (value == "default") c.rollout_steps.reset();
    else c.rollout_steps = parse_integer<int>(key, value);
  } else if (key == "eval_len") {
    c.eval_len = parse_integer<int>(key, value);
  } else if (key == "feedback_mode") {
    c.feedback_mode = feedback::parse_feedback_mode(value);
  } else if (key == "eval_seeds") {
    c.eval_seeds.clear();
    std::stringstream ss(value);
    for (std::string item; std::getline(ss, item, ',');)
      c.eval_seeds.push_back(parse_integer<std::uint64_t>(key, trim(item)));
  } else if (key == "seed") {
    c.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "run_dir") {
    c.run_dir = resolve(value, base);
  } else if (key == "stage_rules") {
    c.stage_rules = value.empty() ? std::filesystem::path{} : resolve(value, base);
  } else if (key == "step_budget") {
    c.step_budget = parse_integer<int>(key, value);
  } else if (key == "memory_size") {
    o.memory_size = parse_integer<int>(key, value);
  } else if (key == "char_budget") {
    o.char_budget = parse_integer<int>(key, value);
  } else if (key == "backend") {
    o.backend = opt::parse_backend_kind(value);
  } else if (key == "endpoint") {
    o.endpoint = value;
  } else if (key == "model_name") {
    o.model_name = value;
  } else if (key == "max_retries") {
    o.max_retries = parse_integer<int>(key, value);
  } else if (key == "mock_script") {
    o.mock_script = value.empty() ? std::string{} : resolve(value, base).string();
  } else if (key == "api_key_env") {
    o.api_key_env = value;
  } else if (key == "timeout_seconds") {
    o.timeout_seconds = parse_integer<int>(key, value);
  } else {
    throw ConfigError("unknown option '" + std::string(key) + "'");
  }
}

RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir) {
  RunConfig config;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    try {
      set_option(config, trim(std::string_view(line).substr(0, eq)),
                 std::string_view(line).substr(eq + 1), base_dir);
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str(), path.parent_path());
}

std::string render_run_config(const RunConfig& c) {
  std::ostringstream out;
  std::string seeds;
  for (auto s : c.eval_seeds) seeds += (seeds.empty() ? "" : ",") + std::to_string(s);
  out << "game = " << to_string(c.game) << "\n"
      << "policy = " << c.policy.string() << "\n"
      << "iterations = " << c.iterations << "\n"
      << "rollout_steps = " << c.effective_rollout_steps() << "\n"
      << "eval_len = " << c.eval_len << "\n"
      << "feedback_mode = " << feedback::to_string(c.feedback_mode) << "\n"
      << "eval_seeds = " << seeds << "\n"
      << "seed = " << c.seed << "\n"
      << "run_dir = " << c.run_dir.string() << "\n"
      << "stage_rules = " << c.stage_rules.string() << "\n"
      << "step_budget = " << c.step_budget << "\n"
      << "memory_size = " << c.optimizer.memory_size << "\n"
      << "char_budget = " << c.optimizer.char_budget << "\n"
      << "backend = " << opt::to_string(c.optimizer.backend) << "\n"
      << "endpoint = " << c.optimizer.endpoint << "\n"
      << "model_name = " << c.optimizer.model_name << "\n"
      << "max_retries = " << c.optimizer.max_retries << "\n"
      << "mock_script = " << c.optimizer.mock_script << "\n"
      << "api_key_env = " << c.optimizer.api_key_env << "\n"
      << "timeout_seconds = " << c.optimizer.timeout_seconds << "\n";
  return out.str();
}

void validate(const RunConfig& c) {
  if (c.policy.empty()) throw ConfigError("no policy file given");
  if (c.iterations < 0) throw ConfigError("iterations must be >= 0");
  if (c.effective_rollout_steps() <= 0) throw ConfigError("rollout_steps must be positive");
  if (c.eval_len < 0) throw ConfigError("eval_len must be >= 0");
  if (c.eval_seeds.empty()) throw ConfigError("eval_seeds must list at least one seed");
  if (c.step_budget <= 0) throw ConfigError("step_budget must be positive");
  if (c.run_dir.empty()) throw ConfigError("run_dir must be set");
  opt::validate(c.optimizer);
}

}  // namespace codeplay::harness
