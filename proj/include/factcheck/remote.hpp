#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "factcheck/backend.hpp"
#include "factcheck/rdf.hpp"

namespace factcheck {

enum class EndpointKind { kSparql, kFactService };

struct EndpointConfig {
  std::string name = "remote";  // provenance of returned triples
  EndpointKind kind = EndpointKind::kSparql;
  std::string base_url;
  std::chrono::milliseconds timeout{30000};
  int max_retries = 2;
  double rate_limit = 4.0;  // requests per second
  std::size_t candidate_cap = kDefaultCandidateCap;
  std::chrono::milliseconds retry_backoff{250};

  // Throws ConfigError on a non-positive timeout or rate, negative retries or
  // a malformed URL.
  void validate() const;
};

// One endpoint per line: `name, kind, url, timeout-seconds, rate`, where kind
// is `sparql` or `fact-service`. '#' starts a comment.
std::vector<EndpointConfig> parse_endpoint_config(std::string_view text);

// Spaces requests at least 1/rate seconds apart across all callers.
class RateLimiter {
 public:
  explicit RateLimiter(double per_second);
  void acquire();

 private:
  std::mutex mutex_;
  std::chrono::steady_clock::duration interval_;
  std::chrono::steady_clock::time_point next_;
};

// Rate limiting and retries shared by both remote clients. Transport errors
// (no response, or HTTP 429/502/503/504) are retried up to max_retries
// times; everything else fails immediately as a ProtocolError.
class RemoteEndpoint {
 public:
  explicit RemoteEndpoint(EndpointConfig config);

  const EndpointConfig& config() const { return config_; }

  // GET {base path}{suffix}, expecting HTTP 200. Returns the body.
  std::string get(const std::string& suffix, const std::string& accept) const;

  std::size_t requests_sent() const { return requests_.load(); }
  std::size_t retries() const { return retries_.load(); }

 private:
  EndpointConfig config_;
  std::string origin_;
  std::string path_;
  std::unique_ptr<RateLimiter> limiter_;
  mutable std::atomic<std::size_t> requests_{0};
  mutable std::atomic<std::size_t> retries_{0};
};

// Query text sent for each operation; the same strings are logged verbatim.
namespace sparql {
std::string term(const Term& t);  // IRIs in <>, literals as quoted lexical form
std::string ask_triple(const Triple& t);
std::string select_sp(const Term& entity, const Term& predicate);
std::string select_so(const Term& entity, const Term& object);
std::string select_as_subject(const Term& entity, std::size_t limit);
std::string select_as_object(const Term& entity, std::size_t limit);
std::string ask_mentions(std::string_view uri);
}  // namespace sparql

// SPARQL 1.1 protocol client (GET, application/sparql-results+json). No
// equivalence closure is applied client-side.
class SparqlClient final : public Backend {
 public:
  explicit SparqlClient(EndpointConfig config);

  bool ask_equivalent(const Triple& t) const;
  std::vector<ProvenancedTriple> select_sp(const Term& entity, const Term& predicate) const;
  std::vector<ProvenancedTriple> select_so(const Term& entity, const Term& object) const;
  EntityTriples select_all(const Term& entity) const;
  bool check_dereferencable(std::string_view uri) const;

  std::string name() const override { return endpoint_.config().name; }
  std::optional<ProvenancedTriple> find_equivalent(const Triple& fact) const override;
  std::vector<PairCandidate> sp_so_candidates(const Term& entity, const Term& predicate,
                                              const Term& object) const override;
  EntityTriples triples_of_entity(const Term& entity,
                                  std::size_t cap = kDefaultCandidateCap) const override;

  const RemoteEndpoint& endpoint() const { return endpoint_; }

 private:
  bool run_ask(const std::string& query) const;
  // (variable name -> term) rows of a SELECT result.
  std::vector<std::vector<std::pair<std::string, Term>>> run_select(const std::string& query) const;
  EntityTriples select_all_capped(const Term& entity, std::size_t cap) const;

  RemoteEndpoint endpoint_;
};

// Client of a fact service exposing `GET {base}/allFacts?uri=<iri>`, which
// answers with a JSON array of {"s","p","o","source"} records (optionally
// "o_kind": "iri" | "literal"). All three rules are evaluated over that one
// call; matching is exact (the service is assumed to apply closure itself).
class FactServiceClient final : public Backend {
 public:
  explicit FactServiceClient(EndpointConfig config);

  EntityTriples select_all(const Term& entity) const;

  std::string name() const override { return endpoint_.config().name; }
  std::optional<ProvenancedTriple> find_equivalent(const Triple& fact) const override;
  std::vector<PairCandidate> sp_so_candidates(const Term& entity, const Term& predicate,
                                              const Term& object) const override;
  EntityTriples triples_of_entity(const Term& entity,
                                  std::size_t cap = kDefaultCandidateCap) const override;

  const RemoteEndpoint& endpoint() const { return endpoint_; }

 private:
  EntityTriples fetch(const Term& entity, std::size_t cap) const;

  RemoteEndpoint endpoint_;
};

std::unique_ptr<Backend> make_remote_backend(const EndpointConfig& config);

}  // namespace factcheck
