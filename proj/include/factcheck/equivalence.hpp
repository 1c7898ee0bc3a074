#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "factcheck/rdf.hpp"

namespace factcheck {

// Union-find over dense indices with path compression and union by rank.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n = 0);

  std::size_t add();
  std::size_t find(std::size_t x);
  void unite(std::size_t a, std::size_t b);
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
};

// owl:sameAs links resources, owl:equivalentProperty links properties and
// owl:equivalentClass links classes. Each kind gets its own partition.
enum class EquivalenceKind : std::uint8_t { kResource, kProperty, kClass };

struct EquivalenceLink {
  EquivalenceKind kind;
  std::string a;
  std::string b;
};

// Where a term appears in a triple. Predicates resolve against the property
// partition; subjects and objects against the class partition when the IRI
// takes part in an equivalentClass link, else the resource partition.
enum class Position : std::uint8_t { kSubject, kPredicate, kObject };

// Symmetric-transitive closure of equivalence links. The representative of a
// class is its lexicographically smallest member, so it does not depend on
// link order. Immutable after construction.
class EquivalenceIndex {
 public:
  EquivalenceIndex() = default;
  explicit EquivalenceIndex(std::span<const EquivalenceLink> links);

  // Representative IRI within one partition; IRIs without links represent
  // themselves.
  std::string_view representative(EquivalenceKind kind, std::string_view iri) const;

  bool equivalent(EquivalenceKind kind, std::string_view a, std::string_view b) const {
    return representative(kind, a) == representative(kind, b);
  }

  // Partition used for an IRI at `pos`.
  EquivalenceKind kind_at(Position pos, std::string_view iri) const;

  // Canonical class key of a term at a position. Literals compare by lexical
  // form only; blank nodes are scoped by `blank_scope` (the source graph).
  // Keys of different term kinds never collide.
  std::string key(const Term& term, Position pos, std::string_view blank_scope = {}) const;

  // IRIs linked under more than one kind; reported as load diagnostics.
  const std::vector<std::string>& mixed_kind_iris() const { return mixed_kind_; }

  std::size_t link_count() const { return link_count_; }

 private:
  struct Partition {
    std::unordered_map<std::string, std::size_t> ids;
    std::vector<std::string> representative;  // by member id
  };

  Partition partitions_[3];
  std::vector<std::string> mixed_kind_;
  std::size_t link_count_ = 0;
};

}  // namespace factcheck
