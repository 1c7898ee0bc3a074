#include "doctest.h"

#include <thread>

#include "factcheck/error.hpp"
#include "factcheck/kg_store.hpp"
#include "factcheck/ntriples.hpp"
#include "factcheck/remote.hpp"
#include "factcheck/validator.hpp"
#include "support/stubs.hpp"

using namespace factcheck;
using namespace std::chrono_literals;

namespace {

Triple parse(const std::string& s) { return parse_single_triple(s, PrefixMap::defaults()); }
Term term(const std::string& s) { return parse_term(s, PrefixMap::defaults()); }

std::vector<Triple> sample() {
  return {parse("dbr:A dbo:p dbr:B ."), parse("dbr:A dbo:q \"lit\"@en ."), parse("dbr:C dbo:p dbr:A ."),
          parse("dbr:C dbo:r dbr:D ."), parse("dbr:A dbo:p dbr:B .")};
}

EndpointConfig sparql_config(const std::string& url) {
  EndpointConfig c;
  c.name = "stub";
  c.base_url = url;
  c.timeout = 5s;
  c.rate_limit = 1000;
  c.retry_backoff = 1ms;
  return c;
}

std::vector<Triple> plain(const std::vector<ProvenancedTriple>& v) {
  std::vector<Triple> out;
  for (const auto& x : v) out.push_back(x.triple);
  return out;
}

}  // namespace

TEST_CASE("query strings") {
  const Triple t = parse("dbr:A dbo:p \"x \\\"y\\\"\"@en .");
  CHECK(sparql::ask_triple(t) ==
        "ASK { <http://dbpedia.org/resource/A> <http://dbpedia.org/ontology/p> \"x \\\"y\\\"\" }");
  CHECK(sparql::select_sp(term("dbr:A"), term("dbo:p")) ==
        "SELECT ?o WHERE { <http://dbpedia.org/resource/A> <http://dbpedia.org/ontology/p> ?o }");
  CHECK(sparql::select_so(term("dbr:A"), term("dbr:B")) ==
        "SELECT ?p WHERE { <http://dbpedia.org/resource/A> ?p <http://dbpedia.org/resource/B> }");
  CHECK(sparql::select_as_subject(term("dbr:A"), 10) ==
        "SELECT ?p ?o WHERE { <http://dbpedia.org/resource/A> ?p ?o } LIMIT 10");
  CHECK(sparql::select_as_object(term("dbr:A"), 10) ==
        "SELECT ?s ?p WHERE { ?s ?p <http://dbpedia.org/resource/A> } LIMIT 10");
  CHECK(sparql::ask_mentions("http://x.org/u") ==
        "ASK { { <http://x.org/u> ?p ?o } UNION { ?s <http://x.org/u> ?o } UNION { ?s ?p <http://x.org/u> } }");
}

TEST_CASE("endpoint config") {
  EndpointConfig c = sparql_config("http://127.0.0.1:1/sparql");
  CHECK_NOTHROW(c.validate());
  c.timeout = 0ms;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = sparql_config("http://127.0.0.1:1/sparql");
  c.rate_limit = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = sparql_config("ftp://x");
  CHECK_THROWS_AS(c.validate(), ConfigError);

  const auto parsed = parse_endpoint_config(
      "# name, kind, url, timeout, rate\ndbpedia, sparql, https://dbpedia.org/sparql, 30, 4\n"
      "lod, fact-service, http://localhost:8080/api, 10, 2.5\n");
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].kind == EndpointKind::kSparql);
  CHECK(parsed[1].kind == EndpointKind::kFactService);
  CHECK(parsed[1].timeout == 10s);
  CHECK(parsed[1].rate_limit == 2.5);
  CHECK_THROWS_AS(parse_endpoint_config("x, gopher, http://a, 1, 1\n"), ConfigError);
}

TEST_CASE("sparql client") {
  stub::SparqlStub server(sample());
  const SparqlClient client(sparql_config(server.url()));

  CHECK(client.ask_equivalent(parse("dbr:A dbo:p dbr:B .")));
  CHECK_FALSE(client.ask_equivalent(parse("dbr:A dbo:p dbr:Z .")));
  CHECK(client.ask_equivalent(parse("dbr:A dbo:q \"lit\" .")));
  for (const auto& accept : server.accept_headers()) {
    CHECK(accept.find("application/sparql-results+json") != std::string::npos);
  }

  SUBCASE("select_sp deduplicates and orders") {
    const auto got = client.select_sp(term("dbr:A"), term("dbo:p"));
    CHECK(plain(got) == std::vector<Triple>{parse("dbr:A dbo:p dbr:B .")});
    CHECK(got[0].source == "stub");
    CHECK(client.select_sp(term("dbr:A"), term("dbo:zz")).empty());
  }
  SUBCASE("select_so") {
    CHECK(plain(client.select_so(term("dbr:A"), term("dbr:B"))) ==
          std::vector<Triple>{parse("dbr:A dbo:p dbr:B .")});
    CHECK(plain(client.select_so(term("dbr:A"), term("\"lit\""))) ==
          std::vector<Triple>{parse("dbr:A dbo:q \"lit\"@en .")});
  }
  SUBCASE("select_all covers object position") {
    const auto all = client.select_all(term("dbr:D"));
    CHECK(plain(all.triples) == std::vector<Triple>{parse("dbr:C dbo:r dbr:D .")});
    CHECK(client.select_all(term("dbr:A")).triples.size() == 3);
  }
  SUBCASE("dereferenceability") {
    CHECK(client.check_dereferencable("http://dbpedia.org/ontology/r"));
    CHECK(client.check_dereferencable("http://dbpedia.org/resource/D"));
    CHECK_FALSE(client.check_dereferencable("http://dbpedia.org/resource/Nowhere"));
    CHECK(server.queries().back() == sparql::ask_mentions("http://dbpedia.org/resource/Nowhere"));
  }
  SUBCASE("queries are sent verbatim") {
    client.select_sp(term("dbr:A"), term("dbo:p"));
    CHECK(server.queries().back() == sparql::select_sp(term("dbr:A"), term("dbo:p")));
  }
}

TEST_CASE("retries only on transport errors") {
  stub::SparqlStub server(sample());
  const SparqlClient client(sparql_config(server.url()));

  server.fail_next(2, 503);
  CHECK(client.ask_equivalent(parse("dbr:A dbo:p dbr:B .")));
  CHECK(client.endpoint().retries() == 2);
  CHECK(server.requests() == 3);

  server.fail_next(3, 503);
  CHECK_THROWS_AS(client.ask_equivalent(parse("dbr:A dbo:p dbr:B .")), TransportError);
  CHECK(server.requests() == 6);

  server.fail_next(1, 500);
  CHECK_THROWS_AS(client.ask_equivalent(parse("dbr:A dbo:p dbr:B .")), ProtocolError);
  CHECK(server.requests() == 7);

  server.fail_next(1, 429);
  CHECK(client.ask_equivalent(parse("dbr:A dbo:p dbr:B .")));
}

TEST_CASE("malformed queries and unreachable endpoints") {
  EndpointConfig c = sparql_config("http://" + stub::unused_tcp_address() + "/sparql");
  c.max_retries = 1;
  const SparqlClient dead(c);
  CHECK_THROWS_AS(dead.ask_equivalent(parse("dbr:A dbo:p dbr:B .")), TransportError);

  // Blank nodes cannot be put in a query, so the stub is never asked.
  stub::SparqlStub server(sample());
  const SparqlClient client(sparql_config(server.url()));
  CHECK_THROWS_AS(client.select_all(term("_:b")), DomainError);
  CHECK(server.requests() == 0);
}

TEST_CASE("rate limiting spaces requests") {
  stub::SparqlStub server(sample());
  EndpointConfig c = sparql_config(server.url());
  c.rate_limit = 20;
  const SparqlClient client(c);
  for (int i = 0; i < 6; ++i) client.ask_equivalent(parse("dbr:A dbo:p dbr:B ."));
  const auto times = server.arrivals();
  REQUIRE(times.size() == 6);
  const auto span = std::chrono::duration<double>(times.back() - times.front()).count();
  // 5 gaps of at least 50 ms; allow scheduler jitter of one millisecond each.
  CHECK(span >= 5 * 0.050 - 0.005);
}

TEST_CASE("rate limiter is shared across threads") {
  RateLimiter limiter(50);
  const auto start = std::chrono::steady_clock::now();
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < 4; ++t) pool.emplace_back([&] {
      for (int i = 0; i < 5; ++i) limiter.acquire();
    });
  }
  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(elapsed >= 19 * 0.020 - 0.005);
  CHECK_THROWS_AS(RateLimiter(0), ConfigError);
}

TEST_CASE("fact service client") {
  std::vector<ProvenancedTriple> records{
      {parse("dbr:Aristotle dbo:birthPlace dbr:Stagira ."), "dbpedia"},
      {parse("dbr:Aristotle dbo:birthDate \"384 BC\" ."), "yago"},
      {parse("dbr:Plato dbo:influenced dbr:Aristotle ."), "wikidata"},
      {parse("dbr:Plato dbo:birthPlace dbr:Athens ."), "dbpedia"}};
  EndpointConfig c = sparql_config("");
  c.kind = EndpointKind::kFactService;

  SUBCASE("sources are preserved") {
    stub::FactServiceStub server(records);
    c.base_url = server.url();
    const FactServiceClient client(c);
    const auto all = client.select_all(term("dbr:Aristotle"));
    REQUIRE(all.triples.size() == 3);
    std::set<std::string> sources;
    for (const auto& t : all.triples) sources.insert(t.source);
    CHECK(sources == std::set<std::string>{"dbpedia", "yago", "wikidata"});
    CHECK(server.requested_uris().back() == "http://dbpedia.org/resource/Aristotle");

    const auto same = client.find_equivalent(parse("dbr:Aristotle dbo:birthDate \"384 BC\" ."));
    REQUIRE(same);
    CHECK(same->source == "yago");
    const auto pairs = client.sp_so_candidates(term("dbr:Aristotle"), term("dbo:birthPlace"), term("dbr:Athens"));
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].same_predicate);
  }
  SUBCASE("object kind is inferred when absent") {
    stub::FactServiceStub server(records, false);
    c.base_url = server.url();
    const FactServiceClient client(c);
    const auto all = client.select_all(term("dbr:Aristotle"));
    REQUIRE(all.triples.size() == 3);
    for (const auto& t : all.triples) {
      if (t.source == "yago") CHECK(t.triple.object.is_literal());
      else CHECK(t.triple.object.is_iri());
    }
  }
  SUBCASE("cap and truncation") {
    std::vector<ProvenancedTriple> many;
    for (int i = 0; i < 6000; ++i) {
      many.push_back({parse("dbr:X dbo:p \"v" + std::to_string(i) + "\" ."), "dbpedia"});
    }
    stub::FactServiceStub server(many);
    c.base_url = server.url();
    const FactServiceClient client(c);
    const auto all = client.select_all(term("dbr:X"));
    CHECK(all.triples.size() == 5000);
    CHECK(all.truncated);
  }
  SUBCASE("errors") {
    stub::FactServiceStub server(records);
    c.base_url = server.url();
    c.max_retries = 0;
    const FactServiceClient client(c);
    server.fail_next(1, 502);
    CHECK_THROWS_AS(client.select_all(term("dbr:Aristotle")), TransportError);
    server.fail_next(1, 404);
    CHECK_THROWS_AS(client.select_all(term("dbr:Aristotle")), ProtocolError);
  }
}

TEST_CASE("remote and local backends agree") {
  std::vector<ProvenancedTriple> local;
  for (const auto& t : sample()) local.push_back({t, "stub"});
  const KnowledgeGraph kg(local, "stub");
  stub::SparqlStub server(sample());
  const SparqlClient client(sparql_config(server.url()));
  for (const char* f : {"dbr:A dbo:p dbr:B .", "dbr:A dbo:p dbr:Z .", "dbr:A dbo:zz dbr:B .",
                        "dbr:C dbo:x dbr:Y .", "dbr:Nobody dbo:p dbr:B .", "dbr:A dbo:q \"lit\" ."}) {
    const Triple fact = parse(f);
    const auto a = find_candidates(fact, kg);
    const auto b = find_candidates(fact, client);
    CHECK(a.rule == b.rule);
    CHECK(a.candidates == b.candidates);
    CHECK(a.same_predicate == b.same_predicate);
  }
}
