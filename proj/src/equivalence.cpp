#include "factcheck/equivalence.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace factcheck {

DisjointSets::DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
  for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
}

std::size_t DisjointSets::add() {
  parent_.push_back(parent_.size());
  rank_.push_back(0);
  return parent_.size() - 1;
}

std::size_t DisjointSets::find(std::size_t x) {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    const std::size_t next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

void DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
}

EquivalenceIndex::EquivalenceIndex(std::span<const EquivalenceLink> links)
    : link_count_(links.size()) {
  DisjointSets sets[3];
  std::vector<std::string> names[3];
  auto intern = [&](int k, const std::string& iri) {
    auto [it, inserted] = partitions_[k].ids.try_emplace(iri, names[k].size());
    if (inserted) {
      names[k].push_back(iri);
      sets[k].add();
    }
    return it->second;
  };

  for (const EquivalenceLink& link : links) {
    const int k = static_cast<int>(link.kind);
    sets[k].unite(intern(k, link.a), intern(k, link.b));
  }

  for (int k = 0; k < 3; ++k) {
    const std::size_t n = names[k].size();
    std::vector<std::size_t> min_member(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t root = sets[k].find(i);
      if (min_member[root] == n || names[k][i] < names[k][min_member[root]]) min_member[root] = i;
    }
    auto& reps = partitions_[k].representative;
    reps.resize(n);
    for (std::size_t i = 0; i < n; ++i) reps[i] = names[k][min_member[sets[k].find(i)]];
  }

  std::set<std::string> mixed;
  for (int a = 0; a < 3; ++a) {
    for (const auto& [iri, id] : partitions_[a].ids) {
      for (int b = a + 1; b < 3; ++b) {
        if (partitions_[b].ids.contains(iri)) mixed.insert(iri);
      }
    }
  }
  mixed_kind_.assign(mixed.begin(), mixed.end());
}

std::string_view EquivalenceIndex::representative(EquivalenceKind kind,
                                                  std::string_view iri) const {
  const Partition& p = partitions_[static_cast<int>(kind)];
  auto it = p.ids.find(std::string(iri));
  if (it == p.ids.end()) return iri;
  return p.representative[it->second];
}

EquivalenceKind EquivalenceIndex::kind_at(Position pos, std::string_view iri) const {
  if (pos == Position::kPredicate) return EquivalenceKind::kProperty;
  const Partition& classes = partitions_[static_cast<int>(EquivalenceKind::kClass)];
  if (classes.ids.contains(std::string(iri))) return EquivalenceKind::kClass;
  return EquivalenceKind::kResource;
}

std::string EquivalenceIndex::key(const Term& term, Position pos,
                                  std::string_view blank_scope) const {
  std::string out;
  switch (term.kind()) {
    case TermKind::kLiteral:
      out = "L|";
      out += term.value();
      return out;
    case TermKind::kBlank:
      out = "B|";
      out += blank_scope;
      out += '|';
      out += term.value();
      return out;
    case TermKind::kIri:
      break;
  }
  const EquivalenceKind kind = kind_at(pos, term.value());
  switch (kind) {
    case EquivalenceKind::kResource: out = "R|"; break;
    case EquivalenceKind::kProperty: out = "P|"; break;
    case EquivalenceKind::kClass: out = "C|"; break;
  }
  out += representative(kind, term.value());
  return out;
}

}  // namespace factcheck
