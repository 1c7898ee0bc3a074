#include "factcheck/kg_store.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "factcheck/error.hpp"
#include "text_util.hpp"

namespace factcheck {

bool provenanced_less(const ProvenancedTriple& a, const ProvenancedTriple& b) {
  const std::string sa = serialize_triple(a.triple);
  const std::string sb = serialize_triple(b.triple);
  if (sa != sb) return sa < sb;
  return a.source < b.source;
}

void sort_canonical(std::vector<ProvenancedTriple>& triples) {
  std::vector<std::pair<std::string, std::size_t>> keys(triples.size());
  for (std::size_t i = 0; i < triples.size(); ++i) {
    keys[i] = {serialize_triple(triples[i].triple), i};
  }
  std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return triples[a.second].source < triples[b.second].source;
  });
  std::vector<ProvenancedTriple> sorted;
  sorted.reserve(triples.size());
  for (const auto& k : keys) sorted.push_back(std::move(triples[k.second]));
  triples = std::move(sorted);
}

std::vector<GraphFile> parse_manifest(std::string_view text,
                                      const std::filesystem::path& base_dir) {
  std::vector<GraphFile> files;
  std::size_t line_no = 0;
  for (std::string_view line : text_util::split_lines(text)) {
    ++line_no;
    line = text_util::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("manifest line " + std::to_string(line_no) + ": expected name=path");
    }
    std::string name(text_util::trim(line.substr(0, eq)));
    std::filesystem::path path(std::string(text_util::trim(line.substr(eq + 1))));
    if (name.empty() || path.empty()) {
      throw ConfigError("manifest line " + std::to_string(line_no) + ": empty name or path");
    }
    if (path.is_relative()) path = base_dir / path;
    files.push_back({std::move(path), std::move(name)});
  }
  return files;
}

namespace {

std::vector<EquivalenceLink> collect_links(const std::vector<ProvenancedTriple>& triples,
                                           std::vector<LoadDiagnostic>& diagnostics) {
  std::vector<EquivalenceLink> links;
  for (const auto& pt : triples) {
    const Triple& t = pt.triple;
    const std::string& p = t.predicate.value();
    EquivalenceKind kind;
    if (p == vocab::kOwlSameAs) {
      kind = EquivalenceKind::kResource;
    } else if (p == vocab::kOwlEquivalentProperty) {
      kind = EquivalenceKind::kProperty;
    } else if (p == vocab::kOwlEquivalentClass) {
      kind = EquivalenceKind::kClass;
    } else {
      continue;
    }
    if (!t.subject.is_iri() || !t.object.is_iri()) {
      diagnostics.push_back({pt.source,
                             {0, Severity::kWarning,
                              "equivalence statement with a non-IRI term ignored: " +
                                  serialize_triple(t)}});
      continue;
    }
    links.push_back({kind, t.subject.value(), t.object.value()});
  }
  return links;
}

}  // namespace

KnowledgeGraph KnowledgeGraph::load(const std::vector<GraphFile>& files, const PrefixMap& prefixes,
                                    std::string name) {
  std::vector<ProvenancedTriple> triples;
  std::vector<LoadDiagnostic> diagnostics;
  for (const GraphFile& file : files) {
    std::ifstream in(file.path, std::ios::binary);
    if (!in) throw LoadError("cannot read knowledge graph file '" + file.path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw LoadError("error while reading '" + file.path.string() + "'");
    const std::string source = file.source.empty() ? file.path.stem().string() : file.source;
    ParseReport report = parse_triples(buf.str(), prefixes);
    for (Triple& t : report.triples) triples.push_back({std::move(t), source});
    for (Diagnostic& d : report.diagnostics) diagnostics.push_back({source, std::move(d)});
  }
  return KnowledgeGraph(std::move(triples), std::move(name), std::move(diagnostics));
}

KnowledgeGraph::KnowledgeGraph(std::vector<ProvenancedTriple> triples, std::string name)
    : KnowledgeGraph(std::move(triples), std::move(name), {}) {}

KnowledgeGraph::KnowledgeGraph(std::vector<ProvenancedTriple> triples, std::string name,
                               std::vector<LoadDiagnostic> diagnostics)
    : name_(std::move(name)), diagnostics_(std::move(diagnostics)) {
  for (const auto& pt : triples) {
    if (pt.source.empty()) throw DomainError("provenanced triple with empty source graph");
  }

  // Canonical order, one entry per (triple, source).
  std::vector<std::string> serialized(triples.size());
  for (std::size_t i = 0; i < triples.size(); ++i) serialized[i] = serialize_triple(triples[i].triple);
  std::vector<std::size_t> order(triples.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (serialized[a] != serialized[b]) return serialized[a] < serialized[b];
    return triples[a].source < triples[b].source;
  });
  triples_.reserve(triples.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    if (k > 0 && serialized[order[k - 1]] == serialized[i] && triples_.back().source == triples[i].source) {
      continue;
    }
    triples_.push_back(std::move(triples[i]));
  }

  const auto links = collect_links(triples_, diagnostics_);
  equivalence_ = EquivalenceIndex(links);
  for (const std::string& iri : equivalence_.mixed_kind_iris()) {
    diagnostics_.push_back(
        {name_, {0, Severity::kWarning, "IRI linked under more than one equivalence kind: " + iri}});
  }

  keys_.reserve(triples_.size());
  for (std::uint32_t i = 0; i < triples_.size(); ++i) {
    const auto& pt = triples_[i];
    Keys k{equivalence_.key(pt.triple.subject, Position::kSubject, pt.source),
           equivalence_.key(pt.triple.predicate, Position::kPredicate, pt.source),
           equivalence_.key(pt.triple.object, Position::kObject, pt.source)};
    by_subject_[k.subject].push_back(i);
    by_object_[k.object].push_back(i);
    keys_.push_back(std::move(k));

    const Triple& t = pt.triple;
    if (t.subject.is_iri()) iris_.insert(t.subject.value());
    iris_.insert(t.predicate.value());
    if (t.object.is_iri()) iris_.insert(t.object.value());
    if (t.subject.is_iri() && t.predicate.value() == vocab::kRdfsLabel && t.object.is_literal()) {
      labels_[t.subject.value()].push_back(t.object.value());
    }
  }
  for (auto& [iri, values] : labels_) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
  }
}

void KnowledgeGraph::require_iri(const Term& entity, const char* op) const {
  if (!entity.is_iri()) {
    throw DomainError(std::string(op) + ": entity must be an IRI, got " + serialize_term(entity));
  }
}

const std::vector<std::uint32_t>* KnowledgeGraph::subject_hits(const Term& entity) const {
  auto it = by_subject_.find(equivalence_.key(entity, Position::kSubject));
  return it == by_subject_.end() ? nullptr : &it->second;
}

EntityTriples KnowledgeGraph::triples_of_entity(const Term& entity, std::size_t cap) const {
  require_iri(entity, "triples_of_entity");
  const std::string subject_key = equivalence_.key(entity, Position::kSubject);
  const std::string object_key = equivalence_.key(entity, Position::kObject);
  static const std::vector<std::uint32_t> kEmpty;
  auto lookup = [](const auto& index, const std::string& key) -> const std::vector<std::uint32_t>& {
    auto it = index.find(key);
    return it == index.end() ? kEmpty : it->second;
  };
  const auto& as_subject = lookup(by_subject_, subject_key);
  const auto& as_object = lookup(by_object_, object_key);
  std::vector<std::uint32_t> merged;
  merged.reserve(as_subject.size() + as_object.size());
  std::set_union(as_subject.begin(), as_subject.end(), as_object.begin(), as_object.end(),
                 std::back_inserter(merged));

  EntityTriples out;
  out.truncated = merged.size() > cap;
  if (out.truncated) merged.resize(cap);
  out.triples.reserve(merged.size());
  for (std::uint32_t i : merged) out.triples.push_back(triples_[i]);
  return out;
}

std::optional<ProvenancedTriple> KnowledgeGraph::find_equivalent(const Triple& fact) const {
  require_iri(fact.subject, "find_equivalent");
  const auto* hits = subject_hits(fact.subject);
  if (hits == nullptr) return std::nullopt;
  const std::string p = equivalence_.key(fact.predicate, Position::kPredicate);
  const std::string o = equivalence_.key(fact.object, Position::kObject);
  for (std::uint32_t i : *hits) {
    if (keys_[i].predicate == p && keys_[i].object == o) return triples_[i];
  }
  return std::nullopt;
}

std::vector<ProvenancedTriple> KnowledgeGraph::sp_candidates(const Term& entity,
                                                             const Term& predicate) const {
  require_iri(entity, "sp_candidates");
  const std::string p = equivalence_.key(predicate, Position::kPredicate);
  std::vector<ProvenancedTriple> out;
  for (auto& c : pair_candidates(entity, &p, nullptr)) out.push_back(std::move(c.fact));
  return out;
}

std::vector<ProvenancedTriple> KnowledgeGraph::so_candidates(const Term& entity,
                                                             const Term& object) const {
  require_iri(entity, "so_candidates");
  const std::string o = equivalence_.key(object, Position::kObject);
  std::vector<ProvenancedTriple> out;
  for (auto& c : pair_candidates(entity, nullptr, &o)) out.push_back(std::move(c.fact));
  return out;
}

std::vector<PairCandidate> KnowledgeGraph::sp_so_candidates(const Term& entity,
                                                            const Term& predicate,
                                                            const Term& object) const {
  require_iri(entity, "sp_so_candidates");
  const std::string p = equivalence_.key(predicate, Position::kPredicate);
  const std::string o = equivalence_.key(object, Position::kObject);
  return pair_candidates(entity, &p, &o);
}

std::vector<PairCandidate> KnowledgeGraph::pair_candidates(const Term& entity,
                                                           const std::string* predicate_key,
                                                           const std::string* object_key) const {
  std::vector<PairCandidate> out;
  const auto* hits = subject_hits(entity);
  if (hits == nullptr) return out;
  std::set<std::pair<std::string_view, std::string_view>> seen;
  for (std::uint32_t i : *hits) {
    const Keys& k = keys_[i];
    const bool sp = predicate_key != nullptr && k.predicate == *predicate_key;
    const bool so = object_key != nullptr && k.object == *object_key;
    if (!sp && !so) continue;
    // Hits are in canonical order, so the first member of each class of
    // equivalent triples is its canonical minimum.
    if (!seen.emplace(k.predicate, k.object).second) continue;
    out.push_back({triples_[i], sp, so});
  }
  return out;
}

bool KnowledgeGraph::mentions(std::string_view iri) const { return iris_.contains(iri); }

std::vector<std::string> KnowledgeGraph::labels(std::string_view iri) const {
  auto it = labels_.find(std::string(iri));
  return it == labels_.end() ? std::vector<std::string>{} : it->second;
}

std::set<std::string> KnowledgeGraph::source_graphs() const {
  std::set<std::string> out;
  for (const auto& pt : triples_) out.insert(pt.source);
  return out;
}

}  // namespace factcheck
