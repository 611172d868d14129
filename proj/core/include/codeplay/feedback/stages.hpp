#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codeplay/game.hpp"

namespace codeplay::feedback {

enum class StageLevel { high, medium, low };
enum class FeedbackMode { staged_full_game, rollout_only };

std::string_view to_string(StageLevel level);
std::string_view to_string(FeedbackMode mode);
/// Accepts "staged_full_game" (or "staged") and "rollout_only". Throws ConfigError.
FeedbackMode parse_feedback_mode(std::string_view text);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  bool lower_closed = false;
  bool upper_closed = false;

  bool contains(double v) const {
    return (lower_closed ? v >= lower : v > lower) && (upper_closed ? v <= upper : v < upper);
  }
};

struct StageRule {
  std::string game;
  StageLevel level = StageLevel::low;
  Interval interval;
  /// Text with placeholders {score} and {remaining} (target minus score, at least 0).
  std::string text;
};

/// Per-game stage rules, loadable from plain text:
///
///     # comment
///     target   | pong | 21
///     pong     | high   | [19, inf)  | Good job! ... {score} ... {remaining} ...
///     pong     | medium | (0, 19)    | Keep it up! ...
///     pong     | low    | (-inf, 0]  | Your score is {score} points. ...
///
/// Fields are separated by '|'. For every game the intervals must cover the
/// whole real line without overlapping; parse() rejects anything else.
class StageRules {
 public:
  /// The built-in rules for pong, breakout and space_invaders.
  static const StageRules& defaults();
  /// Throws ConfigError with the offending line number.
  static StageRules parse(std::string_view text);
  static StageRules load(const std::filesystem::path& path);

  /// Rule whose interval contains `reward`. Throws ConfigError for unknown games.
  const StageRule& select(std::string_view game, double reward) const;
  /// Selected rule's text with placeholders substituted.
  std::string render(std::string_view game, double reward) const;

  std::vector<std::string> games() const;
  const std::vector<StageRule>& rules() const { return rules_; }
  std::optional<double> target(std::string_view game) const;

 private:
  std::vector<StageRule> rules_;
  std::map<std::string, double, std::less<>> targets_;
};

/// Integer rendering for integral values, shortest round-trip decimal otherwise.
std::string format_score(double value);

/// Built-in staged text for `game` at `eval_reward`.
std::string staged_feedback(Game game, double eval_reward);

struct FeedbackReport {
  std::string text;
  double eval_reward = 0.0;
  double rollout_reward = 0.0;
  FeedbackMode mode = FeedbackMode::staged_full_game;
};

/// Builds the iteration's feedback.
///
/// staged_full_game: staged text for eval_reward, then a line with the rollout
/// reward. rollout_only: only the rollout reward line; eval_reward is stored
/// in the report but never reaches the text. A non-empty `policy_error` is
/// appended in both modes.
FeedbackReport make_feedback(const StageRules& rules, Game game, FeedbackMode mode,
                             double eval_reward, double rollout_reward,
                             const std::string& policy_error = "");

}  // namespace codeplay::feedback
