#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "factcheck/backend.hpp"
#include "factcheck/equivalence.hpp"
#include "factcheck/ntriples.hpp"
#include "factcheck/rdf.hpp"

namespace factcheck {

struct GraphFile {
  std::filesystem::path path;
  std::string source;  // empty: use the file stem
};

// Reads `name=path` lines; relative paths resolve against `base_dir`.
std::vector<GraphFile> parse_manifest(std::string_view text,
                                      const std::filesystem::path& base_dir);

struct LoadDiagnostic {
  std::string source;
  Diagnostic diagnostic;
};

// In-memory knowledge graph with per-triple provenance. Triples are stored
// once per (triple, source) pair in canonical order; the subject and object
// indexes are keyed by equivalence-class keys, so entity lookups see through
// owl:sameAs. Immutable after construction.
class KnowledgeGraph final : public Backend {
 public:
  // Throws LoadError naming the path when a file cannot be read. Parse
  // problems are kept in diagnostics().
  static KnowledgeGraph load(const std::vector<GraphFile>& files, const PrefixMap& prefixes,
                             std::string name = "local");

  explicit KnowledgeGraph(std::vector<ProvenancedTriple> triples, std::string name = "local");

  std::string name() const override { return name_; }

  std::optional<ProvenancedTriple> find_equivalent(const Triple& fact) const override;
  std::vector<PairCandidate> sp_so_candidates(const Term& entity, const Term& predicate,
                                              const Term& object) const override;
  EntityTriples triples_of_entity(const Term& entity,
                                  std::size_t cap = kDefaultCandidateCap) const override;

  std::vector<ProvenancedTriple> sp_candidates(const Term& entity, const Term& predicate) const;
  std::vector<ProvenancedTriple> so_candidates(const Term& entity, const Term& object) const;

  // True when some triple uses `iri` in any position.
  bool mentions(std::string_view iri) const;

  // rdfs:label values of `iri` (exact subject match), sorted ascending.
  std::vector<std::string> labels(std::string_view iri) const;

  const EquivalenceIndex& equivalence() const { return equivalence_; }
  const std::vector<ProvenancedTriple>& triples() const { return triples_; }
  std::set<std::string> source_graphs() const;
  const std::vector<LoadDiagnostic>& diagnostics() const { return diagnostics_; }
  std::size_t size() const { return triples_.size(); }

 private:
  struct Keys {
    std::string subject;
    std::string predicate;
    std::string object;
  };

  KnowledgeGraph(std::vector<ProvenancedTriple> triples, std::string name,
                 std::vector<LoadDiagnostic> diagnostics);

  const std::vector<std::uint32_t>* subject_hits(const Term& entity) const;
  std::vector<PairCandidate> pair_candidates(const Term& entity, const std::string* predicate_key,
                                             const std::string* object_key) const;
  void require_iri(const Term& entity, const char* op) const;

  std::string name_;
  std::vector<ProvenancedTriple> triples_;
  std::vector<Keys> keys_;  // parallel to triples_
  EquivalenceIndex equivalence_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> by_subject_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> by_object_;
  std::unordered_map<std::string, std::vector<std::string>> labels_;
  std::set<std::string, std::less<>> iris_;
  std::vector<LoadDiagnostic> diagnostics_;
};

}  // namespace factcheck
