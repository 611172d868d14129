#pragma once

#include <map>
#include <optional>
#include <string>

#include "codeplay/dsl/ast.hpp"
#include "codeplay/env/observation.hpp"
#include "codeplay/error.hpp"
#include "codeplay/game.hpp"

namespace codeplay::opt {

/// The backend could not be reached or kept failing.
class BackendError : public Error {
 public:
  using Error::Error;
};

/// The backend answered, but not with usable fenced blocks.
class MalformedResponse : public BackendError {
 public:
  using BackendError::BackendError;
};

struct CandidateUpdate {
  /// Trainable function name -> replacement body source.
  std::map<std::string, std::string> replacements;
  /// Text outside the fenced blocks; informational only.
  std::string commentary;

  friend bool operator==(const CandidateUpdate&, const CandidateUpdate&) = default;
};

/// Extracts fenced blocks whose opening fence line ends with a function name
/// ("```policy select_action" or "```select_action"). Untagged blocks count
/// as commentary. Throws MalformedResponse when no tagged block exists, a tag
/// is not a trainable function of `program`, a tag repeats, or a fence is
/// left open.
CandidateUpdate parse_response(const std::string& response, const dsl::PolicyProgram& program);

/// Renders an update back into the fenced form parse_response accepts.
std::string render_update(const CandidateUpdate& update);

struct Rejection {
  /// Function whose replacement failed, or empty for whole-program checks.
  std::string function;
  std::string reason;
};

struct ApplyResult {
  dsl::PolicyProgram program;
  std::optional<Rejection> rejection;

  bool accepted() const { return !rejection.has_value(); }
};

/// Splices every replacement body into a copy of `program`, then re-analyzes,
/// checks the game interface and runs the entry function on the game's smoke
/// observation. Any failure returns `program` unchanged with a rejection.
/// Never throws for bad update content.
ApplyResult apply_update(const dsl::PolicyProgram& program, const CandidateUpdate& update, Game game);

/// Fixed mid-game observation used for smoke evaluation.
const env::Observation& smoke_observation(Game game);

}  // namespace codeplay::opt
