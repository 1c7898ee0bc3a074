#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "factcheck/rdf.hpp"

namespace factcheck {

enum class Severity { kSkipped, kWarning };

struct Diagnostic {
  std::size_t line;  // 1-based
  Severity severity;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// Result of a tolerant, line-oriented parse. Every input line is either a
// triple, blank/comment, or a `skipped` diagnostic. `warning` diagnostics
// annotate lines that still produced a triple (e.g. blank-node subjects).
struct ParseReport {
  std::vector<Triple> triples;
  std::vector<std::size_t> triple_lines;  // parallel to `triples`
  std::vector<Diagnostic> diagnostics;
  std::size_t total_lines = 0;
  std::size_t blank_or_comment_lines = 0;

  std::size_t skipped_count() const;
};

// Accepts full N-Triples statements and prefixed-name statements such as
// `dbr:El_Greco dbo:artist dbr:View_of_Toledo .` (final '.' optional). A
// Turtle-style `a` predicate is read as rdf:type. Never throws on bad input.
ParseReport parse_triples(std::string_view text, const PrefixMap& prefixes);

// Parses exactly one statement; throws DomainError describing the problem.
Triple parse_single_triple(std::string_view statement, const PrefixMap& prefixes);

// Decodes a term written in N-Triples or prefixed-name syntax.
Term parse_term(std::string_view token, const PrefixMap& prefixes);

}  // namespace factcheck
