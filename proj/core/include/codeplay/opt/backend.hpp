#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "codeplay/dsl/ast.hpp"
#include "codeplay/opt/prompt.hpp"
#include "codeplay/opt/update.hpp"

namespace codeplay::opt {

/// A generative backend: one prompt in, one text response out.
/// Throws BackendError on transport failures.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string complete(const std::string& prompt) = 0;
};

/// Replays scripted responses in order, ignoring the prompt.
///
/// The script is a JSON array. Each element is either a string (the raw
/// response text) or an object mapping function names to body sources, which
/// is rendered as fenced blocks. Throws BackendError once exhausted.
class MockBackend : public Backend {
 public:
  explicit MockBackend(std::vector<std::string> responses);
  /// Throws ConfigError for malformed scripts.
  static MockBackend from_json(const std::string& text);
  static MockBackend from_file(const std::filesystem::path& path);

  std::string complete(const std::string& prompt) override;
  std::size_t remaining() const { return responses_.size() - next_; }

 private:
  std::vector<std::string> responses_;
  std::size_t next_ = 0;
};

/// Single-turn HTTP backend.
///
/// POSTs {"model": model_name, "prompt": text} as JSON to the endpoint, with
/// "Authorization: Bearer <key>" when a key is set. The response text is read
/// from "text", "completion", "choices[0].message.content", "choices[0].text"
/// or "content[0].text", whichever is present.
class HttpBackend : public Backend {
 public:
  HttpBackend(std::string endpoint, std::string model_name, std::string api_key,
              int timeout_seconds = 120);
  std::string complete(const std::string& prompt) override;

 private:
  std::string endpoint_;
  std::string model_name_;
  std::string api_key_;
  int timeout_seconds_;
};

/// Builds the configured backend; the HTTP key is read from config.api_key_env.
std::unique_ptr<Backend> make_backend(const OptimizerConfig& config);

struct Proposal {
  CandidateUpdate update;
  int attempts = 0;
};

/// Queries the backend up to 1 + config.max_retries times until a response
/// parses. Throws the last BackendError (or MalformedResponse) when every
/// attempt fails. Every raw response received is appended to `transcript`
/// when given, including those that failed to parse.
Proposal propose_update(const PromptContext& context, const dsl::PolicyProgram& program,
                        Backend& backend, const OptimizerConfig& config,
                        std::vector<std::string>* transcript = nullptr);

}  // namespace codeplay::opt
