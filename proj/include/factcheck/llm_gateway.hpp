#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "factcheck/ntriples.hpp"
#include "factcheck/rdf.hpp"

namespace factcheck {

enum class PromptShape { kEntity, kText, kQuestion, kBenchmarkEntity };

struct PromptSpec {
  PromptShape shape = PromptShape::kEntity;
  std::string payload;
  std::string format = "DBpedia";
};

// Throws DomainError for an empty payload.
std::string build_prompt(const PromptSpec& spec);

// Lowercase hex SHA-256 of the prompt bytes; names replay fixtures.
std::string prompt_hash(std::string_view prompt);

enum class LlmMode { kReplay, kHttp };

struct LlmClientConfig {
  LlmMode mode = LlmMode::kReplay;
  std::filesystem::path fixtures_dir;
  std::string base_url = "https://api.openai.com/v1";
  std::string model = "gpt-3.5-turbo";
  std::string api_key_env = "OPENAI_API_KEY";
  std::chrono::milliseconds timeout = std::chrono::seconds(60);
  double rate_limit = 1.0;  // requests per second

  void validate() const;  // throws ConfigError
};

class LlmClient {
 public:
  virtual ~LlmClient() = default;
  virtual std::string fetch_response(const std::string& prompt) const = 0;
};

// Reads {fixtures_dir}/{prompt_hash}.txt verbatim. Throws NoFixtureError.
class ReplayClient final : public LlmClient {
 public:
  explicit ReplayClient(std::filesystem::path fixtures_dir);
  std::string fetch_response(const std::string& prompt) const override;

  std::filesystem::path fixture_path(const std::string& prompt) const;

 private:
  std::filesystem::path dir_;
};

// POSTs {base_url}/chat/completions and returns choices[0].message.content.
class HttpChatClient final : public LlmClient {
 public:
  explicit HttpChatClient(LlmClientConfig config);
  ~HttpChatClient() override;
  std::string fetch_response(const std::string& prompt) const override;

 private:
  struct State;
  LlmClientConfig config_;
  std::string api_key_;
  std::unique_ptr<State> state_;
};

std::unique_ptr<LlmClient> make_llm_client(const LlmClientConfig& config);

// Drops code-fence lines and leading list markers ("-", "*", "1.", "2)")
// then parses what is left. Line numbers in the report match the response.
ParseReport extract_facts(std::string_view response, const PrefixMap& prefixes);

}  // namespace factcheck
