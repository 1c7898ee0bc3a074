#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "factcheck/rdf.hpp"

namespace factcheck {

struct ProvenancedTriple {
  Triple triple;
  std::string source;  // source-graph identifier, never empty

  friend bool operator==(const ProvenancedTriple&, const ProvenancedTriple&) = default;
};

// Orders by canonical serialization, then by source graph.
bool provenanced_less(const ProvenancedTriple& a, const ProvenancedTriple& b);

// Sorts by `provenanced_less`, serializing each triple once.
void sort_canonical(std::vector<ProvenancedTriple>& triples);

// A same-subject candidate together with the reason it qualified.
struct PairCandidate {
  ProvenancedTriple fact;
  bool same_predicate = false;
  bool same_object = false;
};

struct EntityTriples {
  std::vector<ProvenancedTriple> triples;
  bool truncated = false;
};

inline constexpr std::size_t kDefaultCandidateCap = 5000;

// What candidate retrieval needs from a knowledge graph. Implemented by the
// in-memory store and by the remote SPARQL / fact-service clients. All
// methods are const and safe to call concurrently. Results are
// deterministically ordered by `provenanced_less`.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual std::string name() const = 0;

  // A triple of T(e) equivalent to `fact`, if any (first rule).
  virtual std::optional<ProvenancedTriple> find_equivalent(const Triple& fact) const = 0;

  // Triples with the fact's subject and either its predicate or its object,
  // deduplicated (second rule).
  virtual std::vector<PairCandidate> sp_so_candidates(const Term& entity, const Term& predicate,
                                                      const Term& object) const = 0;

  // Every triple mentioning `entity` as subject or object, at most `cap`
  // (third rule).
  virtual EntityTriples triples_of_entity(const Term& entity,
                                          std::size_t cap = kDefaultCandidateCap) const = 0;
};

}  // namespace factcheck
