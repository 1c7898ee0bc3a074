#include "doctest.h"

#include <cstdlib>

#include "json.hpp"

#include "factcheck/error.hpp"
#include "factcheck/llm_gateway.hpp"
#include "factcheck/ntriples.hpp"
#include "support/files.hpp"
#include "support/generators.hpp"
#include "support/stubs.hpp"

using namespace factcheck;

namespace {

PromptSpec spec(PromptShape shape, std::string payload) {
  PromptSpec s;
  s.shape = shape;
  s.payload = std::move(payload);
  return s;
}

const char* kElytisText = "The birthplace of Odysseas Elytis was Heraklion, Crete, Greece";

std::string chat_reply(const std::string& content) {
  return nlohmann::json{{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}}}.dump();
}

LlmClientConfig http_config(const std::string& url, const std::string& env) {
  LlmClientConfig cfg;
  cfg.mode = LlmMode::kHttp;
  cfg.base_url = url;
  cfg.api_key_env = env;
  cfg.timeout = std::chrono::seconds(5);
  cfg.rate_limit = 100;
  return cfg;
}

}  // namespace

TEST_CASE("prompt templates") {
  CHECK(build_prompt(spec(PromptShape::kEntity, "Aristotle")) ==
        "Give me facts about entity Aristotle using RDF N-triples and DBpedia format");
  CHECK(build_prompt(spec(PromptShape::kText, kElytisText)) ==
        std::string("Give me facts using RDF N-triples and DBpedia format for the text: ") + kElytisText);
  CHECK(build_prompt(spec(PromptShape::kQuestion, "Which was the birth place of Odysseas Elytis?")) ==
        "Give me facts using RDF N-triples and DBpedia format about the question: Which was the birth place of "
        "Odysseas Elytis?");
  CHECK(build_prompt(spec(PromptShape::kBenchmarkEntity, "Pericles")) ==
        "Give me facts in RDF N-Triples format for entity Pericles using DBpedia format");
  auto wd = spec(PromptShape::kEntity, "Aristotle");
  wd.format = "Wikidata";
  CHECK(build_prompt(wd) == "Give me facts about entity Aristotle using RDF N-triples and Wikidata format");
  CHECK_THROWS_AS(build_prompt(spec(PromptShape::kEntity, "  ")), DomainError);
}

TEST_CASE("prompt hash") {
  CHECK(prompt_hash("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(prompt_hash("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(prompt_hash(build_prompt(spec(PromptShape::kText, kElytisText))) ==
        "3067859254e76b429edccf113b9145e3716cd3eda42de3a6632caf1dffc8091c");
  CHECK(prompt_hash(build_prompt(spec(PromptShape::kEntity, "Odysseas Elytis"))) ==
        "d80e07f2b236f9fa887ba0a4a0e5c3662bd1eae6efbbc65c3ebcf6c1e631fb53");
}

TEST_CASE("replay client") {
  const ReplayClient client(files::data_dir() / "fixtures");
  const std::string prompt = build_prompt(spec(PromptShape::kText, kElytisText));
  const std::string response = client.fetch_response(prompt);
  CHECK(response == files::read(client.fixture_path(prompt)));
  CHECK(response == client.fetch_response(prompt));

  try {
    client.fetch_response("never recorded");
    FAIL("expected a missing fixture");
  } catch (const NoFixtureError& e) {
    CHECK(e.hash() == prompt_hash("never recorded"));
    CHECK(std::string(e.what()).find(e.hash()) != std::string::npos);
  }
  CHECK_THROWS_AS(ReplayClient("/nonexistent/fixtures"), ConfigError);

  LlmClientConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.fixtures_dir = files::data_dir() / "fixtures";
  CHECK_NOTHROW(cfg.validate());
  CHECK(make_llm_client(cfg)->fetch_response(prompt) == response);
}

TEST_CASE("http chat client") {
  ::setenv("FACTCHECK_TEST_KEY", "sk-test-123", 1);
  const std::string content = "<http://ex.org/a> <http://ex.org/b> <http://ex.org/c> .";

  SUBCASE("sends a bearer token from the environment") {
    stub::ScriptedHttp server("/v1/chat/completions", 200, chat_reply(content));
    const auto client = make_llm_client(http_config(server.url() + "/v1", "FACTCHECK_TEST_KEY"));
    CHECK(client->fetch_response("hello") == content);
    CHECK(server.last_authorization() == "Bearer sk-test-123");
    const auto body = nlohmann::json::parse(server.last_body());
    CHECK(body["model"] == "gpt-3.5-turbo");
    CHECK(body["messages"][0]["role"] == "user");
    CHECK(body["messages"][0]["content"] == "hello");
  }
  SUBCASE("rate limited") {
    stub::ScriptedHttp server("/v1/chat/completions", 429, "{}");
    const HttpChatClient client(http_config(server.url() + "/v1", "FACTCHECK_TEST_KEY"));
    CHECK_THROWS_AS(client.fetch_response("x"), TransportError);
  }
  SUBCASE("bad request") {
    stub::ScriptedHttp server("/v1/chat/completions", 400, "{}");
    const HttpChatClient client(http_config(server.url() + "/v1", "FACTCHECK_TEST_KEY"));
    CHECK_THROWS_AS(client.fetch_response("x"), ProtocolError);
  }
  SUBCASE("malformed reply") {
    stub::ScriptedHttp server("/v1/chat/completions", 200, "{\"choices\": []}");
    const HttpChatClient client(http_config(server.url() + "/v1", "FACTCHECK_TEST_KEY"));
    CHECK_THROWS_AS(client.fetch_response("x"), ProtocolError);
  }
  SUBCASE("missing key") {
    ::unsetenv("FACTCHECK_TEST_MISSING_KEY");
    CHECK_THROWS_AS(HttpChatClient(http_config("http://127.0.0.1:9", "FACTCHECK_TEST_MISSING_KEY")), ConfigError);
  }
  SUBCASE("unreachable") {
    const HttpChatClient client(http_config("http://" + stub::unused_tcp_address(), "FACTCHECK_TEST_KEY"));
    CHECK_THROWS_AS(client.fetch_response("x"), TransportError);
  }
}

TEST_CASE("extract facts from responses") {
  const auto prefixes = PrefixMap::defaults();

  SUBCASE("fenced block") {
    const ReplayClient client(files::data_dir() / "fixtures");
    const auto r = extract_facts(client.fetch_response(build_prompt(spec(PromptShape::kText, kElytisText))), prefixes);
    REQUIRE(r.triples.size() == 3);
    CHECK(r.triples[0] == parse_single_triple("dbr:Odysseas_Elytis dbo:birthPlace dbr:Heraklion .", prefixes));
    CHECK(r.triple_lines == std::vector<std::size_t>{4, 5, 6});
    CHECK(r.skipped_count() == 1);
  }
  SUBCASE("numbered list") {
    const ReplayClient client(files::data_dir() / "fixtures");
    const auto r =
        extract_facts(client.fetch_response(build_prompt(spec(PromptShape::kEntity, "Odysseas Elytis"))), prefixes);
    REQUIRE(r.triples.size() == 3);
    CHECK(r.triples[1].object == Term::literal("1911-11-03", std::string("http://www.w3.org/2001/XMLSchema#date")));
    CHECK(r.triples[2] ==
          parse_single_triple("dbr:Odysseas_Elytis dbo:award dbr:Nobel_Prize_in_Literature .", prefixes));
  }
  SUBCASE("prose only") {
    const auto r = extract_facts("Elytis was born in Heraklion.\nNo triples here.\n", prefixes);
    CHECK(r.triples.empty());
    CHECK(r.skipped_count() == 2);
  }
  SUBCASE("markers") {
    const auto r = extract_facts("- dbr:A dbo:b dbr:C .\n* dbr:A dbo:b dbr:D\n2) dbr:A dbo:b \"x\" .\n~~~\n", prefixes);
    CHECK(r.triples.size() == 3);
    CHECK(r.skipped_count() == 0);
  }
  SUBCASE("round trip") {
    gen::Rng rng(5);
    std::vector<Triple> triples;
    std::string response = "Here you go:\n```\n";
    for (int i = 0; i < 100; ++i) {
      triples.push_back(gen::triple(rng));
      response += std::to_string(i + 1) + ". " + serialize_triple(triples.back()) + "\n";
    }
    response += "```\n";
    const auto r = extract_facts(response, prefixes);
    CHECK(r.triples == triples);
  }
}
