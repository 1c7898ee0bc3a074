#pragma once

#include <regex>
#include <string>
#include <vector>

#include "factcheck/rdf.hpp"

namespace factcheck {

class KnowledgeGraph;

inline constexpr const char* kDefaultOpaqueIdPattern = "^[A-Za-z]{0,2}[0-9]+$";

struct VerbalizerOptions {
  // Local names matching this are replaced by an rdfs:label when one is known.
  std::regex opaque_id{kDefaultOpaqueIdPattern};
};

struct Substitution {
  Term term;
  std::string label;
};

struct VerbalizedTriple {
  Triple original;
  std::string sentence;
  std::vector<Substitution> substitutions;
};

// Renders a term as plain words: local name of an IRI with underscores as
// spaces, percent-decoded and split at lower->upper case boundaries; opaque
// ids (Q868, P569) become their smallest rdfs:label from `labels` if any;
// literals become their lexical form.
std::string convert_term(const Term& term, const KnowledgeGraph* labels = nullptr,
                         const VerbalizerOptions& options = {});

// Space-joins the three rendered terms, collapsing whitespace.
VerbalizedTriple convert_triple(const Triple& triple, const KnowledgeGraph* labels = nullptr,
                                const VerbalizerOptions& options = {});

}  // namespace factcheck
