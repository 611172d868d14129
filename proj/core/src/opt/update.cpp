#include "codeplay/opt/update.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "codeplay/dsl/interface.hpp"
#include "codeplay/dsl/interpreter.hpp"
#include "codeplay/dsl/parser.hpp"
#include "codeplay/env/trajectory.hpp"
#include "codeplay/trace/traced_rollout.hpp"
#include "opt/smoke_observations.hpp"

namespace codeplay::opt {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

bool is_fence(const std::string& line) { return trim(line).rfind("```", 0) == 0; }

bool starts_with_definition(const std::string& src) {
  const std::string t = trim(src.substr(0, src.find('\n')));
  return t.rfind("fn ", 0) == 0 || t.rfind("@", 0) == 0;
}

}  // namespace

CandidateUpdate parse_response(const std::string& response, const dsl::PolicyProgram& program) {
  CandidateUpdate update;
  std::istringstream in(response);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!is_fence(line)) {
      update.commentary += line + "\n";
      continue;
    }
    const int open_line = line_no;
    const auto info = words(trim(line).substr(3));
    std::string body;
    bool closed = false;
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line) == "```") {
        closed = true;
        break;
      }
      body += line + "\n";
    }
    if (!closed)
      throw MalformedResponse("fenced block opened on line " + std::to_string(open_line) +
                              " is never closed");

    std::string tag;
    if (info.size() >= 2) {
      tag = info.back();
    } else if (info.size() == 1 && program.find(info[0]) != nullptr) {
      tag = info[0];
    }
    if (tag.empty()) {
      update.commentary += "```\n" + body + "```\n";
      continue;
    }
    const dsl::FunctionDef* f = program.find(tag);
    if (f == nullptr || !f->trainable)
      throw MalformedResponse("block on line " + std::to_string(open_line) + " targets '" + tag +
                              "', which is not a trainable function");
    if (update.replacements.count(tag))
      throw MalformedResponse("more than one block for '" + tag + "'");
    update.replacements.emplace(tag, std::move(body));
  }
  if (update.replacements.empty())
    throw MalformedResponse("response contains no fenced block tagged with a trainable function");
  return update;
}

std::string render_update(const CandidateUpdate& update) {
  std::string out;
  for (const auto& [name, body] : update.replacements) {
    out += "```policy " + name + "\n" + body;
    if (!body.empty() && body.back() != '\n') out += "\n";
    out += "```\n";
  }
  return out;
}

ApplyResult apply_update(const dsl::PolicyProgram& program, const CandidateUpdate& update,
                         Game game) {
  auto reject = [&](std::string function, std::string reason) {
    return ApplyResult{program, Rejection{std::move(function), std::move(reason)}};
  };

  dsl::PolicyProgram next = program;
  for (const auto& [name, source] : update.replacements) {
    const int idx = next.index_of(name);
    if (idx < 0 || !next.functions[static_cast<std::size_t>(idx)].trainable)
      return reject(name, "not a trainable function");
    dsl::FunctionDef& f = next.functions[static_cast<std::size_t>(idx)];
    try {
      if (starts_with_definition(source)) {
        dsl::FunctionDef parsed = dsl::parse_function(source);
        if (parsed.name != name)
          return reject(name, "block defines '" + parsed.name + "' instead");
        f.params = std::move(parsed.params);
        f.body = std::move(parsed.body);
        if (parsed.docstring) f.docstring = std::move(parsed.docstring);
      } else {
        dsl::ParsedBody parsed = dsl::parse_body(source);
        f.body = std::move(parsed.stmts);
        if (parsed.docstring) f.docstring = std::move(parsed.docstring);
      }
    } catch (const Error& e) {
      return reject(name, std::string("parse error: ") + e.what());
    }
  }

  try {
    dsl::analyze(next);
  } catch (const Error& e) {
    return reject("", std::string("invalid program: ") + e.what());
  }
  if (auto violations = dsl::validate_for_game(next, game); !violations.empty()) {
    std::string reason = "interface violation: " + violations.front();
    for (std::size_t i = 1; i < violations.size(); ++i) reason += "; " + violations[i];
    return reject("", reason);
  }
  try {
    const dsl::Value action = dsl::evaluate_entry(next, smoke_observation(game)).value;
    if (auto problem = trace::check_action(action, game); !problem.empty())
      return reject(next.entry, "smoke evaluation: " + problem);
  } catch (const dsl::PolicyError& e) {
    return reject(e.function(), std::string("smoke evaluation failed: ") + e.what());
  }
  return ApplyResult{std::move(next), std::nullopt};
}

const env::Observation& smoke_observation(Game game) {
  static const env::Observation pong = env::observation_from_json(detail::kSmoke_pong);
  static const env::Observation breakout = env::observation_from_json(detail::kSmoke_breakout);
  static const env::Observation invaders = env::observation_from_json(detail::kSmoke_space_invaders);
  switch (game) {
    case Game::pong: return pong;
    case Game::breakout: return breakout;
    case Game::space_invaders: return invaders;
  }
  return pong;
}

}  // namespace codeplay::opt
