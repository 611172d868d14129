#include "codeplay/feedback/stages.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "codeplay/dsl/formatter.hpp"
#include "codeplay/error.hpp"

namespace codeplay::feedback {

namespace {

constexpr const char* kDefaultRules = R"(# Built-in staged feedback.
target | pong | 21
target | breakout | 350

pong | high | [19, inf) | Good job! You're close to winning the game! You're scoring {score} points against the opponent, only {remaining} points short of winning.
pong | medium | (0, 19) | Keep it up! You're scoring {score} points against the opponent but you are still {remaining} points from winning the game. Try improving paddle positioning to prevent opponent scoring.
pong | low | (-inf, 0] | Your score is {score} points. Try to improve paddle positioning to prevent opponent scoring.

breakout | high | [300, inf) | Good job! You're close to winning the game! You're scoring {score} points against the opponent, try ensuring you return the ball, only {remaining} points short of winning.
breakout | medium | (0, 300) | Keep it up! You're scoring {score} points against the opponent but you are still {remaining} points from winning the game. Try improving paddle positioning to return the ball and avoid losing lives.
breakout | low | (-inf, 0] | Your score is {score} points. Try to improve paddle positioning to return the ball and avoid losing lives.

space_invaders | high | [1000, inf) | Great job! You're performing well with an average score of {score}. Try to score more even more points
space_invaders | medium | (500, 1000) | Good progress! Your average score is {score}. Focus on better timing for shooting and avoiding enemy projectiles.
space_invaders | low | (-inf, 500] | Your average score is {score}. Try to improve your strategy for shooting aliens and dodging projectiles.
)";

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line, std::size_t max_fields) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (out.size() + 1 < max_fields) {
    const auto bar = line.find('|', start);
    if (bar == std::string::npos) break;
    out.push_back(trim(std::string_view(line).substr(start, bar - start)));
    start = bar + 1;
  }
  out.push_back(trim(std::string_view(line).substr(start)));
  return out;
}

double parse_bound(const std::string& s, int line) {
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("stage rules line " + std::to_string(line) + ": bad bound '" + s + "'");
}

Interval parse_interval(const std::string& s, int line) {
  auto fail = [&] {
    throw ConfigError("stage rules line " + std::to_string(line) + ": bad interval '" + s +
                      "' (expected e.g. [19, inf) or (0, 19))");
  };
  if (s.size() < 5) fail();
  const char open = s.front();
  const char close = s.back();
  if ((open != '[' && open != '(') || (close != ']' && close != ')')) fail();
  const auto comma = s.find(',');
  if (comma == std::string::npos) fail();
  Interval iv;
  iv.lower = parse_bound(trim(std::string_view(s).substr(1, comma - 1)), line);
  iv.upper = parse_bound(trim(std::string_view(s).substr(comma + 1, s.size() - comma - 2)), line);
  iv.lower_closed = open == '[' && std::isfinite(iv.lower);
  iv.upper_closed = close == ']' && std::isfinite(iv.upper);
  if (!(iv.lower < iv.upper)) fail();
  return iv;
}

StageLevel parse_level(const std::string& s, int line) {
  if (s == "high") return StageLevel::high;
  if (s == "medium") return StageLevel::medium;
  if (s == "low") return StageLevel::low;
  throw ConfigError("stage rules line " + std::to_string(line) + ": unknown level '" + s + "'");
}

void check_partition(const std::string& game, std::vector<const StageRule*> rules) {
  std::sort(rules.begin(), rules.end(),
            [](const StageRule* a, const StageRule* b) { return a->interval.lower < b->interval.lower; });
  auto fail = [&](const std::string& why) {
    throw ConfigError("stage rules for " + game + " do not partition the reward line: " + why);
  };
  if (std::isfinite(rules.front()->interval.lower)) fail("nothing covers rewards below the lowest stage");
  if (std::isfinite(rules.back()->interval.upper)) fail("nothing covers rewards above the highest stage");
  for (std::size_t i = 1; i < rules.size(); ++i) {
    const Interval& a = rules[i - 1]->interval;
    const Interval& b = rules[i]->interval;
    if (a.upper != b.lower) fail(a.upper < b.lower ? "gap between stages" : "overlapping stages");
    if (a.upper_closed == b.lower_closed)
      fail(a.upper_closed ? "boundary belongs to two stages" : "boundary belongs to no stage");
  }
}

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
    s.replace(pos, from.size(), to);
}

}  // namespace

std::string_view to_string(StageLevel level) {
  switch (level) {
    case StageLevel::high: return "high";
    case StageLevel::medium: return "medium";
    case StageLevel::low: return "low";
  }
  return "low";
}

std::string_view to_string(FeedbackMode mode) {
  return mode == FeedbackMode::rollout_only ? "rollout_only" : "staged_full_game";
}

FeedbackMode parse_feedback_mode(std::string_view text) {
  if (text == "staged_full_game" || text == "staged") return FeedbackMode::staged_full_game;
  if (text == "rollout_only") return FeedbackMode::rollout_only;
  throw ConfigError("unknown feedback mode '" + std::string(text) +
                    "' (expected staged_full_game or rollout_only)");
}

const StageRules& StageRules::defaults() {
  static const StageRules kDefaults = parse(kDefaultRules);
  return kDefaults;
}

StageRules StageRules::parse(std::string_view text) {
  StageRules out;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line, 4);
    if (fields.size() == 3 && fields[0] == "target") {
      out.targets_[fields[1]] = parse_bound(fields[2], line_no);
      continue;
    }
    if (fields.size() != 4 || fields[0].empty() || fields[3].empty())
      throw ConfigError("stage rules line " + std::to_string(line_no) +
                        ": expected 'game | level | interval | text'");
    StageRule rule;
    rule.game = fields[0];
    rule.level = parse_level(fields[1], line_no);
    rule.interval = parse_interval(fields[2], line_no);
    rule.text = fields[3];
    out.rules_.push_back(std::move(rule));
  }
  for (const auto& game : out.games()) {
    std::vector<const StageRule*> mine;
    for (const auto& r : out.rules_)
      if (r.game == game) mine.push_back(&r);
    check_partition(game, mine);
    for (const auto* r : mine)
      if (r->text.find("{remaining}") != std::string::npos && !out.targets_.count(game))
        throw ConfigError("stage rules for " + game + " use {remaining} but set no target");
  }
  return out;
}

StageRules StageRules::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read stage rules file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const StageRule& StageRules::select(std::string_view game, double reward) const {
  for (const auto& r : rules_)
    if (r.game == game && r.interval.contains(reward)) return r;
  throw ConfigError("no stage rules for game '" + std::string(game) + "'");
}

std::string StageRules::render(std::string_view game, double reward) const {
  std::string text = select(game, reward).text;
  replace_all(text, "{score}", format_score(reward));
  if (auto t = target(game)) replace_all(text, "{remaining}", format_score(std::max(0.0, *t - reward)));
  return text;
}

std::vector<std::string> StageRules::games() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& r : rules_)
    if (seen.insert(r.game).second) out.push_back(r.game);
  return out;
}

std::optional<double> StageRules::target(std::string_view game) const {
  auto it = targets_.find(game);
  if (it == targets_.end()) return std::nullopt;
  return it->second;
}

std::string format_score(double value) { return dsl::format_number(value); }

std::string staged_feedback(Game game, double eval_reward) {
  return StageRules::defaults().render(to_string(game), eval_reward);
}

FeedbackReport make_feedback(const StageRules& rules, Game game, FeedbackMode mode,
                             double eval_reward, double rollout_reward,
                             const std::string& policy_error) {
  FeedbackReport report;
  report.eval_reward = eval_reward;
  report.rollout_reward = rollout_reward;
  report.mode = mode;
  const std::string rollout_line =
      "Training rollout reward: " + format_score(rollout_reward) + ".";
  if (mode == FeedbackMode::staged_full_game)
    report.text = rules.render(to_string(game), eval_reward) + "\n" + rollout_line;
  else
    report.text = rollout_line;
  if (!policy_error.empty()) report.text += "\nThe policy failed during the rollout: " + policy_error;
  return report;
}

}  // namespace codeplay::feedback
