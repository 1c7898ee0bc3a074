#pragma once

#include <string>

#include "json.hpp"

#include "factcheck/rdf.hpp"
#include "factcheck/validator.hpp"

namespace factcheck {

// Machine form of one validation. Triples are full N-Triples; timings are
// omitted unless asked for so that repeated runs compare byte-for-byte.
nlohmann::ordered_json result_json(const ValidationResult& result, bool include_timings = false);

// Human form. Scores are printed with six decimals; triples are compacted
// with `prefixes` when given.
std::string result_text(const ValidationResult& result, const PrefixMap* prefixes = nullptr,
                        bool include_timings = false);

double to_ms(std::chrono::nanoseconds ns);

}  // namespace factcheck
