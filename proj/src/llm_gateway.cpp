#include "factcheck/llm_gateway.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "factcheck/error.hpp"
#include "factcheck/remote.hpp"
#include "http.hpp"
#include "text_util.hpp"

namespace factcheck {

std::string build_prompt(const PromptSpec& spec) {
  if (text_util::trim(spec.payload).empty()) throw DomainError("prompt payload is empty");
  switch (spec.shape) {
    case PromptShape::kEntity:
      return "Give me facts about entity " + spec.payload + " using RDF N-triples and " +
             spec.format + " format";
    case PromptShape::kText:
      return "Give me facts using RDF N-triples and " + spec.format +
             " format for the text: " + spec.payload;
    case PromptShape::kQuestion:
      return "Give me facts using RDF N-triples and " + spec.format +
             " format about the question: " + spec.payload;
    case PromptShape::kBenchmarkEntity:
      return "Give me facts in RDF N-Triples format for entity " + spec.payload +
             " using DBpedia format";
  }
  throw DomainError("unknown prompt shape");
}

std::string prompt_hash(std::string_view prompt) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(prompt.data(), prompt.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  return text_util::hex_lower(digest, len);
}

void LlmClientConfig::validate() const {
  if (mode == LlmMode::kReplay) {
    if (fixtures_dir.empty() || !std::filesystem::is_directory(fixtures_dir)) {
      throw ConfigError("replay mode needs an existing fixtures directory (got '" +
                        fixtures_dir.string() + "')");
    }
    return;
  }
  if (model.empty()) throw ConfigError("llm model name is empty");
  if (api_key_env.empty()) throw ConfigError("llm api key environment variable name is empty");
  if (!(rate_limit > 0.0)) throw ConfigError("llm rate limit must be positive");
  http::parse_url(base_url);
}

ReplayClient::ReplayClient(std::filesystem::path fixtures_dir) : dir_(std::move(fixtures_dir)) {
  if (!std::filesystem::is_directory(dir_)) {
    throw ConfigError("fixtures directory '" + dir_.string() + "' does not exist");
  }
}

std::filesystem::path ReplayClient::fixture_path(const std::string& prompt) const {
  return dir_ / (prompt_hash(prompt) + ".txt");
}

std::string ReplayClient::fetch_response(const std::string& prompt) const {
  const auto path = fixture_path(prompt);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NoFixtureError(prompt_hash(prompt), path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct HttpChatClient::State {
  explicit State(double rate) : limiter(rate) {}
  http::Url url;
  RateLimiter limiter;
};

HttpChatClient::HttpChatClient(LlmClientConfig config) : config_(std::move(config)) {
  config_.validate();
  const char* key = std::getenv(config_.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw ConfigError("environment variable " + config_.api_key_env + " is not set");
  }
  api_key_ = key;
  state_ = std::make_unique<State>(config_.rate_limit);
  state_->url = http::parse_url(config_.base_url);
}

HttpChatClient::~HttpChatClient() = default;

std::string HttpChatClient::fetch_response(const std::string& prompt) const {
  nlohmann::json body{{"model", config_.model},
                      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})}};
  std::string path = state_->url.path;
  if (path.empty() || path.back() != '/') path += '/';
  path += "chat/completions";
  state_->limiter.acquire();
  const auto response = http::post(state_->url, path, body.dump(), "application/json",
                                   {{"Authorization", "Bearer " + api_key_}}, config_.timeout);
  if (response.status != 200) {
    const std::string msg = "chat endpoint returned HTTP " + std::to_string(response.status);
    if (response.status == 429 || response.status >= 500) throw TransportError(msg);
    throw ProtocolError(msg);
  }
  try {
    const auto reply = nlohmann::json::parse(response.body);
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("malformed chat completion reply: ") + e.what());
  }
}

std::unique_ptr<LlmClient> make_llm_client(const LlmClientConfig& config) {
  config.validate();
  if (config.mode == LlmMode::kReplay) return std::make_unique<ReplayClient>(config.fixtures_dir);
  return std::make_unique<HttpChatClient>(config);
}

namespace {

bool is_fence(std::string_view line) {
  return line.starts_with("```") || line.starts_with("~~~");
}

std::string_view strip_list_marker(std::string_view line) {
  if (line.size() >= 2 && (line[0] == '-' || line[0] == '*' || line[0] == '+') &&
      (line[1] == ' ' || line[1] == '\t')) {
    return text_util::trim(line.substr(2));
  }
  std::size_t i = 0;
  while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
  if (i > 0 && i + 1 < line.size() && (line[i] == '.' || line[i] == ')') &&
      (line[i + 1] == ' ' || line[i + 1] == '\t')) {
    return text_util::trim(line.substr(i + 2));
  }
  return line;
}

}  // namespace

ParseReport extract_facts(std::string_view response, const PrefixMap& prefixes) {
  std::string cleaned;
  cleaned.reserve(response.size());
  for (std::string_view raw : text_util::split_lines(response)) {
    std::string_view line = text_util::trim(raw);
    if (!is_fence(line)) cleaned += strip_list_marker(line);
    cleaned += '\n';
  }
  return parse_triples(cleaned, prefixes);
}

}  // namespace factcheck
