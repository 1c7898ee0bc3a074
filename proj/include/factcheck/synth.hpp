#pragma once

#include <cstdint>
#include <vector>

#include "factcheck/backend.hpp"
#include "factcheck/benchmark.hpp"
#include "factcheck/validator.hpp"

namespace factcheck {

// A generated knowledge graph plus benchmark whose outcome classes are fixed
// by construction (30 facts per class at tau 0.9 with the fallback encoder).
struct SyntheticBenchmark {
  std::vector<ProvenancedTriple> kg;  // sources "dbpedia" and "wikidata"
  std::vector<BenchmarkRecord> records;
  std::vector<OutcomeClass> expected_class;  // parallel to records
  std::vector<Rule> expected_rule;
};

inline constexpr std::uint64_t kDefaultSynthSeed = 42;
inline constexpr double kSynthTau = 0.9;

// Throws Error if no valid construction is found for some fact, which would
// indicate an encoder change.
SyntheticBenchmark make_synthetic_benchmark(std::uint64_t seed = kDefaultSynthSeed);

// 2000 facts split persons 1000 (812 correct), places 500 (319), events 500
// (330). Top-10 predicate counts and unique URI/property counts per part
// follow the published benchmark description.
std::vector<BenchmarkRecord> make_paper_proportioned_benchmark();

}  // namespace factcheck
