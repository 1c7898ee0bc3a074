#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "factcheck/backend.hpp"
#include "factcheck/encoder.hpp"
#include "factcheck/error.hpp"
#include "factcheck/rdf.hpp"
#include "factcheck/verbalizer.hpp"

namespace factcheck {

class KnowledgeGraph;

// Candidate retrieval rule: A = same or equivalent triple, B = same
// subject-predicate or subject-object pair, C = every triple of the entity.
enum class Rule { kA, kB, kC };
std::string_view to_string(Rule rule);

// Which pair qualified the best rule-B match.
enum class PairKind { kNone, kSamePredicate, kSameObject };
std::string_view to_string(PairKind kind);

class BlankSubjectError : public DomainError {
 public:
  BlankSubjectError()
      : DomainError("fact has a blank-node subject; an entity IRI is required for validation") {}
};

struct CandidateSet {
  Rule rule = Rule::kC;
  std::vector<ProvenancedTriple> candidates;
  // Rule B only, parallel to `candidates`: qualified through the predicate.
  std::vector<bool> same_predicate;
  bool truncated = false;
};

struct RankedMatch {
  ProvenancedTriple triple;
  double score = 0.0;
  std::string sentence;
};

struct PhaseTimings {
  std::chrono::nanoseconds candidate_retrieval{0};
  std::chrono::nanoseconds encoding{0};
  std::chrono::nanoseconds ranking{0};

  std::chrono::nanoseconds total() const { return candidate_retrieval + encoding + ranking; }
};

struct ValidationResult {
  Triple fact;
  std::string fact_sentence;
  Rule rule = Rule::kC;
  PairKind pair = PairKind::kNone;
  std::vector<RankedMatch> matches;  // score desc, then canonical order
  std::size_t candidate_count = 0;
  bool truncated = false;
  PhaseTimings timings;
  std::string backend_name;
};

struct ValidateOptions {
  std::size_t k = 3;
  std::size_t candidate_cap = kDefaultCandidateCap;
  const KnowledgeGraph* labels = nullptr;  // rdfs:label source for opaque ids
  VerbalizerOptions verbalizer;
};

// Rules A, B, C tried strictly in that order; the first that yields
// candidates wins. Rule C may yield zero candidates. Backend errors are
// rethrown with the failing rule in the message.
CandidateSet find_candidates(const Triple& fact, const Backend& backend,
                             std::size_t candidate_cap = kDefaultCandidateCap);

// Verbalizes and encodes the fact and all candidates in one batch, scores by
// cosine and returns the best min(k, n). Throws DomainError when k == 0.
std::vector<RankedMatch> rank(const Triple& fact, const CandidateSet& candidates,
                              const EncoderHandle& encoder, std::size_t k,
                              const ValidateOptions& options = {});

ValidationResult validate(const Triple& fact, const Backend& backend, const EncoderHandle& encoder,
                          const ValidateOptions& options = {});

struct BatchItem {
  std::optional<ValidationResult> result;
  std::string error;  // set iff !result

  bool ok() const { return result.has_value(); }
};

// Order-preserving; per-fact failures are recorded in their slot. Output is
// identical for every parallelism level.
std::vector<BatchItem> validate_batch(std::span<const Triple> facts, const Backend& backend,
                                      const EncoderHandle& encoder, const ValidateOptions& options,
                                      std::size_t parallelism);

}  // namespace factcheck
