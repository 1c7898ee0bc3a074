#include "doctest.h"

#include <sstream>

#include "json.hpp"

#include "cli.hpp"
#include "factcheck/llm_gateway.hpp"
#include "support/files.hpp"

using factcheck::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string manifest() { return (files::data_dir() / "kg" / "manifest.txt").string(); }
std::string fixtures() { return (files::data_dir() / "fixtures").string(); }

}  // namespace

TEST_CASE("validate a fact against the local slices") {
  const auto r = invoke({"validate", "dbr:Aristophanes dbo:genre dbr:Comedy .", "--manifest", manifest(),
                         "--output", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["facts"].size() == 1);
  CHECK(j["facts"][0]["rule"] == "A");
  CHECK(j["facts"][0]["matches"][0]["source"] == "wikidata");
  CHECK(j["facts"][0]["matches"][0]["score"] == 1.0);
  CHECK(j["encoder"] == "fallback-char-trigram-384");
}

TEST_CASE("exit codes") {
  CHECK(invoke({"validate", "dbr:A dbo:b", "--manifest", manifest()}).code == 2);
  const auto bad_tau = invoke({"validate", "dbr:A dbo:b dbr:C .", "--manifest", manifest(), "--tau", "1.01"});
  CHECK(bad_tau.code == 1);
  CHECK(bad_tau.err.find("tau") != std::string::npos);
  CHECK(invoke({"validate", "dbr:A dbo:b dbr:C ."}).code == 1);
  CHECK(invoke({"validate", "dbr:A dbo:b dbr:C .", "--manifest", manifest(), "--k", "0"}).code == 1);
  CHECK(invoke({"validate", "dbr:A dbo:b dbr:C .", "--kg", "/nonexistent.nt"}).code == 1);
  CHECK(invoke({"validate", "dbr:A dbo:b dbr:C .", "--manifest", manifest(), "--sparql", "http://127.0.0.1:1/s"})
            .code == 1);
  CHECK(invoke({"frobnicate"}).code == 1);
  CHECK(invoke({"--help"}).code == 0);

  // One good and one malformed fact: both reported, exit 2.
  const auto mixed = invoke({"validate", "dbr:Aristophanes dbo:genre dbr:Comedy .", "not a triple", "--manifest",
                             manifest(), "--output", "json"});
  CHECK(mixed.code == 2);
  const auto j = nlohmann::json::parse(mixed.out);
  REQUIRE(j["facts"].size() == 2);
  CHECK(j["facts"][0]["rule"] == "A");
  CHECK(j["facts"][1].contains("error"));
}

TEST_CASE("k = 1 is the head of k = 3") {
  const std::string fact = "dbr:Pericles dbo:office dbr:Strategos .";
  const auto one = nlohmann::json::parse(invoke({"validate", fact, "--manifest", manifest(), "--output", "json",
                                                 "--k", "1"}).out);
  const auto three = nlohmann::json::parse(invoke({"validate", fact, "--manifest", manifest(), "--output", "json",
                                                   "--k", "3"}).out);
  REQUIRE(one["facts"][0]["matches"].size() == 1);
  REQUIRE(three["facts"][0]["matches"].size() == 3);
  CHECK(one["facts"][0]["matches"][0] == three["facts"][0]["matches"][0]);
}

TEST_CASE("text and json agree") {
  const std::string fact = "dbr:Georgios_Papanikolaou dbo:birthDate \"1886-05-13\" .";
  const auto text = invoke({"validate", fact, "--manifest", manifest()});
  const auto json = invoke({"validate", fact, "--manifest", manifest(), "--output", "json"});
  REQUIRE(text.code == 0);
  const auto j = nlohmann::json::parse(json.out)["facts"][0];
  CHECK(j["rule"] == "B");
  CHECK(text.out.find("rule: B") != std::string::npos);
  char score[32];
  std::snprintf(score, sizeof score, "%.6f", j["matches"][0]["score"].get<double>());
  CHECK(text.out.find(score) != std::string::npos);
}

TEST_CASE("validate reads fact files in order") {
  files::TempDir tmp;
  files::write(tmp / "facts.nt",
               "dbr:Aristophanes dbo:genre dbr:Comedy .\nthis is prose\n\ndbr:Pericles dbo:office dbr:Strategos .\n");
  const auto r = invoke({"validate", "--file", (tmp / "facts.nt").string(), "--manifest", manifest(), "--output",
                         "json", "--parallelism", "4"});
  CHECK(r.code == 2);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["facts"].size() == 3);
  CHECK(j["facts"][0]["rule"] == "A");
  CHECK(j["facts"][1]["input"].get<std::string>().find(":2") != std::string::npos);
  CHECK(j["facts"][2]["rule"] == "C");
}

TEST_CASE("config file") {
  files::TempDir tmp;
  files::write(tmp / "factcheck.conf", "# settings\nmanifest = " + manifest() + "\nk = 1\n");
  const auto r = invoke({"validate", "dbr:Pericles dbo:office dbr:Strategos .", "--config",
                         (tmp / "factcheck.conf").string(), "--output", "json"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["k"] == 1);
  const auto flag_wins = invoke({"validate", "dbr:Pericles dbo:office dbr:Strategos .", "--config",
                                 (tmp / "factcheck.conf").string(), "--output", "json", "--k", "2"});
  CHECK(nlohmann::json::parse(flag_wins.out)["k"] == 2);

  files::write(tmp / "bad.conf", "api_key = sk-secret\n");
  const auto bad = invoke({"validate", "dbr:A dbo:b dbr:C .", "--config", (tmp / "bad.conf").string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("unknown key") != std::string::npos);
}

TEST_CASE("ask in replay mode") {
  SUBCASE("entity prompt yields three facts") {
    const auto r = invoke({"ask", "Odysseas Elytis", "--fixtures", fixtures(), "--manifest", manifest(), "--output",
                           "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["prompt_hash"] == "d80e07f2b236f9fa887ba0a4a0e5c3662bd1eae6efbbc65c3ebcf6c1e631fb53");
    CHECK(j["extracted"] == 3);
    REQUIRE(j["facts"].size() == 3);
    CHECK(j["facts"][0]["rule"] == "A");
    CHECK(j["facts"][1]["rule"] == "B");
    CHECK(j["facts"][2]["rule"] == "C");
  }
  SUBCASE("prose response") {
    const auto r = invoke({"ask", "Which was the birth place of Odysseas Elytis?", "--shape", "question",
                           "--fixtures", fixtures(), "--manifest", manifest()});
    CHECK(r.code == 0);
    CHECK(r.out.find("0 facts extracted") != std::string::npos);
  }
  SUBCASE("missing fixture") {
    const auto r = invoke({"ask", "Nobody at all", "--fixtures", fixtures(), "--manifest", manifest()});
    CHECK(r.code == 2);
    const std::string hash = factcheck::prompt_hash(
        "Give me facts about entity Nobody at all using RDF N-triples and DBpedia format");
    CHECK(r.err.find(hash) != std::string::npos);
  }
  SUBCASE("no fixtures directory") {
    CHECK(invoke({"ask", "Odysseas Elytis", "--manifest", manifest()}).code == 1);
  }
  SUBCASE("http mode without a key") {
    files::TempDir tmp;
    files::write(tmp / "llm.conf", "llm_api_key_env = FACTCHECK_CLI_TEST_UNSET\n");
    ::unsetenv("FACTCHECK_CLI_TEST_UNSET");
    const auto r = invoke({"ask", "Aristotle", "--llm", "http", "--config", (tmp / "llm.conf").string(),
                           "--manifest", manifest()});
    CHECK(r.code == 1);
    CHECK(r.err.find("FACTCHECK_CLI_TEST_UNSET") != std::string::npos);
  }
}

TEST_CASE("bench commands") {
  files::TempDir tmp;
  const auto synth = invoke({"bench", "synth", "--out-dir", (tmp / "seeded").string()});
  REQUIRE(synth.code == 0);
  for (const char* name : {"benchmark.jsonl", "manifest.txt", "expected.json", "kg-dbpedia.nt", "kg-wikidata.nt"}) {
    CHECK(std::filesystem::exists(tmp / "seeded" / name));
  }
  CHECK(files::read(tmp / "seeded" / "benchmark.jsonl") ==
        files::read(files::data_dir() / "benchmarks" / "seeded" / "benchmark.jsonl"));

  const auto run_r = invoke({"bench", "run", (tmp / "seeded" / "benchmark.jsonl").string(), "--manifest",
                             (tmp / "seeded" / "manifest.txt").string(), "--out-dir", (tmp / "report").string(),
                             "--output", "json"});
  REQUIRE(run_r.code == 0);
  for (const char* name : {"report.json", "report.txt", "worksheet.csv", "histogram.csv"}) {
    CHECK(std::filesystem::exists(tmp / "report" / name));
  }
  const auto j = nlohmann::json::parse(files::read(tmp / "report" / "report.json"));
  CHECK(j["overall"]["C1"] == 30);
  CHECK(j["overall"]["C2"] == 30);
  CHECK(j["overall"]["C3"] == 30);
  CHECK(j["overall"]["C4"] == 30);

  const auto stats = invoke({"bench", "stats", (files::data_dir() / "benchmarks" / "paper-proportioned.jsonl").string(),
                             "--output", "json", "--out-dir", (tmp / "stats").string()});
  REQUIRE(stats.code == 0);
  const auto s = nlohmann::json::parse(stats.out);
  CHECK(s["total"]["facts"] == 2000);
  CHECK(s["total"]["correct"] == 1461);
  CHECK(s["total"]["dereferenceable_uris"] == "unavailable");
  CHECK(std::filesystem::exists(tmp / "stats" / "stats.txt"));

  files::write(tmp / "broken.jsonl", files::read(tmp / "seeded" / "benchmark.jsonl") + "{oops\n");
  const auto broken = invoke({"bench", "run", (tmp / "broken.jsonl").string(), "--manifest",
                              (tmp / "seeded" / "manifest.txt").string()});
  CHECK(broken.code == 1);
  CHECK(broken.err.find("line 121") != std::string::npos);
}
