#include "codeplay/dsl/interface.hpp"

namespace codeplay::dsl {

std::vector<std::string> validate_interface(const PolicyProgram& program,
                                            const std::vector<ExpectedFunction>& expected) {
  std::vector<std::string> violations;
  for (const auto& e : expected) {
    const FunctionDef* f = program.find(e.name);
    if (!f) {
      violations.push_back("missing function '" + e.name + "'");
      continue;
    }
    if (static_cast<int>(f->params.size()) != e.arity)
      violations.push_back("arity mismatch for '" + e.name + "': expected " +
                           std::to_string(e.arity) + " parameter(s), found " +
                           std::to_string(f->params.size()));
    if (f->trainable != e.trainable)
      violations.push_back("'" + e.name + "' must " + (e.trainable ? "" : "not ") +
                           "be marked @trainable");
  }
  return violations;
}

const std::vector<ExpectedFunction>& game_interface(Game game) {
  static const std::vector<ExpectedFunction> kPong{
      {"predict_ball_trajectory", 1, true},
      {"select_action", 2, true},
  };
  static const std::vector<ExpectedFunction> kBreakout{
      {"predict_ball_trajectory", 1, true},
      {"generate_paddle_target", 2, true},
      {"select_paddle_action", 2, true},
  };
  static const std::vector<ExpectedFunction> kInvaders{
      {"decide_shoot", 1, true},
      {"decide_movement", 1, true},
      {"combine_actions", 2, true},
  };
  switch (game) {
    case Game::pong: return kPong;
    case Game::breakout: return kBreakout;
    case Game::space_invaders: return kInvaders;
  }
  return kPong;
}

std::vector<std::string> validate_for_game(const PolicyProgram& program, Game game) {
  auto violations = validate_interface(program, game_interface(game));
  const FunctionDef* entry = program.find(program.entry);
  if (!entry) violations.push_back("missing @entry function");
  else if (entry->params.size() != 1)
    violations.push_back("entry function '" + entry->name + "' must take exactly one parameter");
  return violations;
}

}  // namespace codeplay::dsl
