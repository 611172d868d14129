#include "codeplay/opt/backend.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

namespace codeplay::opt {

namespace {

using nlohmann::json;

std::string response_text(const json& j) {
  if (j.contains("text") && j["text"].is_string()) return j["text"].get<std::string>();
  if (j.contains("completion") && j["completion"].is_string()) return j["completion"].get<std::string>();
  if (j.contains("choices") && j["choices"].is_array() && !j["choices"].empty()) {
    const json& c = j["choices"][0];
    if (c.contains("message") && c["message"].contains("content") && c["message"]["content"].is_string())
      return c["message"]["content"].get<std::string>();
    if (c.contains("text") && c["text"].is_string()) return c["text"].get<std::string>();
  }
  if (j.contains("content") && j["content"].is_array() && !j["content"].empty() &&
      j["content"][0].contains("text") && j["content"][0]["text"].is_string())
    return j["content"][0]["text"].get<std::string>();
  throw MalformedResponse("backend response has no text field");
}

}  // namespace

MockBackend::MockBackend(std::vector<std::string> responses) : responses_(std::move(responses)) {}

MockBackend MockBackend::from_json(const std::string& text) {
  json script;
  try {
    script = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("mock script is not valid JSON: ") + e.what());
  }
  if (!script.is_array()) throw ConfigError("mock script must be a JSON array");
  std::vector<std::string> responses;
  for (std::size_t i = 0; i < script.size(); ++i) {
    const json& item = script[i];
    if (item.is_string()) {
      responses.push_back(item.get<std::string>());
    } else if (item.is_object()) {
      CandidateUpdate u;
      for (const auto& [name, body] : item.items()) {
        if (!body.is_string())
          throw ConfigError("mock script entry " + std::to_string(i) + ": body of '" + name +
                            "' must be a string");
        u.replacements.emplace(name, body.get<std::string>());
      }
      responses.push_back(render_update(u));
    } else {
      throw ConfigError("mock script entry " + std::to_string(i) +
                        " must be a string or an object of function bodies");
    }
  }
  return MockBackend(std::move(responses));
}

MockBackend MockBackend::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read mock script " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string MockBackend::complete(const std::string&) {
  if (next_ >= responses_.size())
    throw BackendError("mock script exhausted after " + std::to_string(responses_.size()) +
                       " responses");
  return responses_[next_++];
}

HttpBackend::HttpBackend(std::string endpoint, std::string model_name, std::string api_key,
                         int timeout_seconds)
    : endpoint_(std::move(endpoint)),
      model_name_(std::move(model_name)),
      api_key_(std::move(api_key)),
      timeout_seconds_(timeout_seconds) {}

std::string HttpBackend::complete(const std::string& prompt) {
  const auto scheme_end = endpoint_.find("://");
  const auto path_start = endpoint_.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  const std::string origin = endpoint_.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : endpoint_.substr(path_start);

  httplib::Client client(origin);
  if (!client.is_valid()) throw BackendError("unsupported endpoint '" + endpoint_ + "'");
  client.set_connection_timeout(timeout_seconds_, 0);
  client.set_read_timeout(timeout_seconds_, 0);
  client.set_write_timeout(timeout_seconds_, 0);
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  const json body = {{"model", model_name_}, {"prompt", prompt}};
  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) throw BackendError("request to " + endpoint_ + " failed: " + httplib::to_string(res.error()));
  if (res->status < 200 || res->status >= 300)
    throw BackendError("backend returned HTTP " + std::to_string(res->status) + ": " +
                       res->body.substr(0, 200));
  json parsed;
  try {
    parsed = json::parse(res->body);
  } catch (const json::exception&) {
    throw MalformedResponse("backend response is not JSON");
  }
  return response_text(parsed);
}

std::unique_ptr<Backend> make_backend(const OptimizerConfig& config) {
  validate(config);
  if (config.backend == BackendKind::mock)
    return std::make_unique<MockBackend>(MockBackend::from_file(config.mock_script));
  const char* key = config.api_key_env.empty() ? nullptr : std::getenv(config.api_key_env.c_str());
  return std::make_unique<HttpBackend>(config.endpoint, config.model_name, key ? key : "",
                                       config.timeout_seconds);
}

Proposal propose_update(const PromptContext& context, const dsl::PolicyProgram& program,
                        Backend& backend, const OptimizerConfig& config,
                        std::vector<std::string>* transcript) {
  Proposal proposal;
  const std::string prompt = context.render();
  std::string last_error;
  bool malformed = false;
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    ++proposal.attempts;
    try {
      const std::string response = backend.complete(prompt);
      if (transcript) transcript->push_back(response);
      proposal.update = parse_response(response, program);
      return proposal;
    } catch (const MalformedResponse& e) {
      last_error = e.what();
      malformed = true;
    } catch (const BackendError& e) {
      last_error = e.what();
      malformed = false;
    }
  }
  const std::string msg = "no usable response after " + std::to_string(proposal.attempts) +
                          " attempt(s): " + last_error;
  if (malformed) throw MalformedResponse(msg);
  throw BackendError(msg);
}

}  // namespace codeplay::opt
