#include "oracles.hpp"

#include <algorithm>

#include "factcheck/verbalizer.hpp"

namespace oracle {

using factcheck::EquivalenceKind;
using factcheck::EquivalenceLink;
using factcheck::Position;
using factcheck::ProvenancedTriple;
using factcheck::Term;
using factcheck::Triple;

Closure::Closure(const std::vector<EquivalenceLink>& links, EquivalenceKind kind) {
  for (const auto& l : links) {
    if (l.kind != kind) continue;
    index_.try_emplace(l.a, index_.size());
    index_.try_emplace(l.b, index_.size());
  }
  const std::size_t n = index_.size();
  reach_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) reach_[i][i] = true;
  for (const auto& l : links) {
    if (l.kind != kind) continue;
    const std::size_t a = index_.at(l.a);
    const std::size_t b = index_.at(l.b);
    reach_[a][b] = true;
    reach_[b][a] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach_[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach_[k][j]) reach_[i][j] = true;
      }
    }
  }
}

bool Closure::equivalent(const std::string& a, const std::string& b) const {
  if (a == b) return true;
  auto ia = index_.find(a);
  auto ib = index_.find(b);
  if (ia == index_.end() || ib == index_.end()) return false;
  return reach_[ia->second][ib->second];
}

std::set<std::string> Closure::members_with(const std::string& iri) const {
  std::set<std::string> out{iri};
  auto it = index_.find(iri);
  if (it == index_.end()) return out;
  for (const auto& [other, j] : index_) {
    if (reach_[it->second][j]) out.insert(other);
  }
  return out;
}

namespace {

std::vector<EquivalenceLink> links_of(const std::vector<ProvenancedTriple>& kg) {
  std::vector<EquivalenceLink> links;
  for (const auto& pt : kg) {
    const Triple& t = pt.triple;
    if (!t.subject.is_iri() || !t.object.is_iri()) continue;
    const std::string& p = t.predicate.value();
    if (p == factcheck::vocab::kOwlSameAs) {
      links.push_back({EquivalenceKind::kResource, t.subject.value(), t.object.value()});
    } else if (p == factcheck::vocab::kOwlEquivalentProperty) {
      links.push_back({EquivalenceKind::kProperty, t.subject.value(), t.object.value()});
    } else if (p == factcheck::vocab::kOwlEquivalentClass) {
      links.push_back({EquivalenceKind::kClass, t.subject.value(), t.object.value()});
    }
  }
  return links;
}

}  // namespace

Equivalence::Equivalence(const std::vector<ProvenancedTriple>& kg)
    : resources_(links_of(kg), EquivalenceKind::kResource),
      properties_(links_of(kg), EquivalenceKind::kProperty),
      classes_(links_of(kg), EquivalenceKind::kClass) {}

bool Equivalence::same(const Term& a, const std::string& scope_a, const Term& b,
                       const std::string& scope_b, Position pos) const {
  if (a.kind() != b.kind()) return false;
  if (a.is_literal()) return a.value() == b.value();
  if (a.is_blank()) return a.value() == b.value() && scope_a == scope_b;
  if (pos == Position::kPredicate) return properties_.equivalent(a.value(), b.value());
  const bool a_class = classes_.contains(a.value());
  const bool b_class = classes_.contains(b.value());
  if (a_class != b_class) return false;
  return a_class ? classes_.equivalent(a.value(), b.value())
                 : resources_.equivalent(a.value(), b.value());
}

Candidates find_candidates(const std::vector<ProvenancedTriple>& kg, const Triple& fact,
                           std::size_t cap) {
  std::vector<ProvenancedTriple> sorted = kg;
  std::sort(sorted.begin(), sorted.end(), [](const ProvenancedTriple& a, const ProvenancedTriple& b) {
    const std::string sa = factcheck::serialize_triple(a.triple);
    const std::string sb = factcheck::serialize_triple(b.triple);
    return sa != sb ? sa < sb : a.source < b.source;
  });
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  const Equivalence eq(kg);
  const std::string fact_scope;  // a fact's blank nodes belong to no source graph
  auto same_s = [&](const ProvenancedTriple& t) {
    return eq.same(t.triple.subject, t.source, fact.subject, fact_scope, Position::kSubject);
  };
  auto same_p = [&](const ProvenancedTriple& t) {
    return eq.same(t.triple.predicate, t.source, fact.predicate, fact_scope, Position::kPredicate);
  };
  auto same_o = [&](const ProvenancedTriple& t) {
    return eq.same(t.triple.object, t.source, fact.object, fact_scope, Position::kObject);
  };

  Candidates out;
  // Rule A: the first equivalent triple.
  for (const auto& t : sorted) {
    if (same_s(t) && same_p(t) && same_o(t)) {
      out.rule = factcheck::Rule::kA;
      out.triples.push_back(t);
      return out;
    }
  }

  // Rule B: same subject and same predicate or object, one per class of
  // equivalent triples.
  for (const auto& t : sorted) {
    if (!same_s(t)) continue;
    const bool sp = same_p(t);
    const bool so = same_o(t);
    if (!sp && !so) continue;
    bool duplicate = false;
    for (const auto& kept : out.triples) {
      if (eq.same(kept.triple.predicate, kept.source, t.triple.predicate, t.source, Position::kPredicate) &&
          eq.same(kept.triple.object, kept.source, t.triple.object, t.source, Position::kObject)) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    out.triples.push_back(t);
    out.same_predicate.push_back(sp);
    out.same_object.push_back(so);
  }
  if (!out.triples.empty()) {
    out.rule = factcheck::Rule::kB;
    return out;
  }

  // Rule C: every triple with the entity as subject or object.
  out.rule = factcheck::Rule::kC;
  for (const auto& t : sorted) {
    const bool as_subject = same_s(t);
    const bool as_object = eq.same(t.triple.object, t.source, fact.subject, fact_scope, Position::kObject);
    if (!as_subject && !as_object) continue;
    if (out.triples.size() == cap) {
      out.truncated = true;
      break;
    }
    out.triples.push_back(t);
  }
  return out;
}

std::vector<Scored> rank(const Triple& fact, const std::vector<ProvenancedTriple>& candidates,
                         const factcheck::Encoder& encoder, std::size_t k) {
  auto embed = [&](const Triple& t) {
    const std::string sentence = factcheck::convert_triple(t).sentence;
    return encoder.encode(std::vector<std::string>{sentence}).front();
  };
  const factcheck::Embedding f = embed(fact);
  std::vector<Scored> all;
  for (const auto& c : candidates) all.push_back({c, factcheck::cosine(f, embed(c.triple))});
  std::sort(all.begin(), all.end(), [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    const std::string sa = factcheck::serialize_triple(a.triple.triple);
    const std::string sb = factcheck::serialize_triple(b.triple.triple);
    if (sa != sb) return sa < sb;
    return a.triple.source < b.triple.source;
  });
  if (all.size() > k) all.erase(all.begin() + static_cast<std::ptrdiff_t>(k), all.end());
  return all;
}

}  // namespace oracle
