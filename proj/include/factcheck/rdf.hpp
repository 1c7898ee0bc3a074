#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace factcheck {

namespace vocab {
inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfsLabel = "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr std::string_view kOwlSameAs = "http://www.w3.org/2002/07/owl#sameAs";
inline constexpr std::string_view kOwlEquivalentProperty =
    "http://www.w3.org/2002/07/owl#equivalentProperty";
inline constexpr std::string_view kOwlEquivalentClass =
    "http://www.w3.org/2002/07/owl#equivalentClass";
}  // namespace vocab

enum class TermKind : std::uint8_t { kIri, kLiteral, kBlank };

// An RDF term. Immutable; construct through the named factories, which
// enforce the per-kind invariants and throw DomainError otherwise.
class Term {
 public:
  static Term iri(std::string value);
  static Term literal(std::string lexical, std::optional<std::string> datatype = std::nullopt,
                      std::optional<std::string> language = std::nullopt);
  static Term blank(std::string label);

  TermKind kind() const { return kind_; }
  bool is_iri() const { return kind_ == TermKind::kIri; }
  bool is_literal() const { return kind_ == TermKind::kLiteral; }
  bool is_blank() const { return kind_ == TermKind::kBlank; }

  // IRI string, literal lexical form or blank-node label depending on kind.
  const std::string& value() const { return value_; }
  const std::optional<std::string>& datatype() const { return datatype_; }
  const std::optional<std::string>& language() const { return language_; }

  friend bool operator==(const Term&, const Term&) = default;

 private:
  Term(TermKind kind, std::string value, std::optional<std::string> datatype,
       std::optional<std::string> language)
      : kind_(kind),
        value_(std::move(value)),
        datatype_(std::move(datatype)),
        language_(std::move(language)) {}

  TermKind kind_;
  std::string value_;
  std::optional<std::string> datatype_;
  std::optional<std::string> language_;
};

// True when `s` is usable as an absolute IRI: has a scheme, no whitespace and
// none of the characters N-Triples forbids inside angle brackets.
bool is_valid_iri(std::string_view s);

struct Triple {
  // Throws DomainError when the subject is a literal or the predicate is not
  // an IRI.
  Triple(Term s, Term p, Term o);

  Term subject;
  Term predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
};

// Prefix label -> namespace IRI.
class PrefixMap {
 public:
  PrefixMap() = default;

  // dbr, dbo, dbp, rdf, rdfs, owl, foaf, yago, wkd, wkp and xsd.
  static PrefixMap defaults();

  // Parses `label=namespace` lines; '#' starts a comment. Entries override
  // existing bindings with the same label.
  void merge_config(std::string_view text);

  // Throws ConfigError on an empty/ill-formed label or a non-absolute
  // namespace. Rebinding an existing label replaces it.
  void bind(std::string label, std::string ns);

  std::optional<std::string> expand(std::string_view label, std::string_view local) const;

  // Longest namespace that is a proper prefix of `iri`; returns (label, local).
  std::optional<std::pair<std::string, std::string>> compact(std::string_view iri) const;

  const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

// Canonical N-Triples form (`<s> <p> "o" .`), or the compacted form when a
// prefix map is supplied. Output always re-parses to the same triple.
std::string serialize_term(const Term& t, const PrefixMap* prefixes = nullptr);
std::string serialize_triple(const Triple& t, const PrefixMap* prefixes = nullptr);

// Orders triples by their canonical serialization.
bool canonical_less(const Triple& a, const Triple& b);

}  // namespace factcheck
