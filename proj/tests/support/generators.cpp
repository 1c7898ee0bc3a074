#include "generators.hpp"

#include <string_view>

namespace gen {

using factcheck::EquivalenceKind;
using factcheck::EquivalenceLink;
using factcheck::ProvenancedTriple;
using factcheck::Term;
using factcheck::Triple;

namespace {

const std::vector<std::string> kNamespaces{
    "http://dbpedia.org/resource/", "http://dbpedia.org/ontology/", "http://www.wikidata.org/entity/",
    "http://ex.org/a#",             "urn:x:",                       "https://ελ.example/παράδειγμα/",
};

// Pieces that are safe inside <...>; several are multi-byte UTF-8.
const std::vector<std::string> kIriPieces{
    "a", "B", "z", "0", "7", "_", "-", ".", "%20", "(", ")", ",", "'", ":", "/", "#",
    "é", "Ω", "中", "Ζεύς", "El_Greco", "View_of_Toledo", "associatedBand", "Q868",
};

const std::vector<std::string> kLiteralPieces{
    "a", "Z", "9", " ", "\"", "\\", "\n", "\r", "\t", "\x01", "\x1f", "\x7f", ".", "<", ">",
    "^^", "@en", "#", "_:", "é", "Ω", "😀", "384 BC", "Mt. Zeus", "\\u00e9",
};

const std::vector<std::string> kLanguages{"en", "el", "en-US", "zh-Hant-TW", "x-1"};
const std::vector<std::string> kDatatypes{
    "http://www.w3.org/2001/XMLSchema#string", "http://www.w3.org/2001/XMLSchema#date",
    "http://www.w3.org/2001/XMLSchema#integer", "http://ex.org/dt#custom"};

std::string pieces(Rng& rng, const std::vector<std::string>& from, std::size_t max) {
  std::string s;
  const std::size_t n = rng.between(0, max);
  for (std::size_t i = 0; i < n; ++i) s += rng.pick(from);
  return s;
}

Term with_random_tag(Rng& rng, std::string lexical) {
  switch (rng.below(3)) {
    case 0: return Term::literal(std::move(lexical));
    case 1: return Term::literal(std::move(lexical), std::nullopt, rng.pick(kLanguages));
    default: return Term::literal(std::move(lexical), rng.pick(kDatatypes));
  }
}

}  // namespace

Term iri(Rng& rng) {
  std::string local = pieces(rng, kIriPieces, 6);
  if (local.empty()) local = "x";
  return Term::iri(rng.pick(kNamespaces) + local);
}

Term literal(Rng& rng) { return with_random_tag(rng, pieces(rng, kLiteralPieces, 8)); }

Term blank(Rng& rng) {
  std::string label = "b" + std::to_string(rng.below(1000));
  if (rng.chance(0.3)) label += "_x.y-" + std::to_string(rng.below(10));
  return Term::blank(std::move(label));
}

Triple triple(Rng& rng) {
  Term s = rng.chance(0.8) ? iri(rng) : blank(rng);
  Term p = iri(rng);
  Term o = [&] {
    switch (rng.below(3)) {
      case 0: return iri(rng);
      case 1: return literal(rng);
      default: return blank(rng);
    }
  }();
  return Triple(std::move(s), std::move(p), std::move(o));
}

std::vector<EquivalenceLink> equivalence_links(Rng& rng, std::size_t nodes, std::size_t max_edges) {
  std::vector<EquivalenceLink> links;
  const std::size_t n = rng.between(0, max_edges);
  for (std::size_t i = 0; i < n; ++i) {
    const auto kind = static_cast<EquivalenceKind>(rng.below(3));
    links.push_back({kind, "http://ex.org/n" + std::to_string(rng.below(nodes)),
                     "http://ex.org/n" + std::to_string(rng.below(nodes))});
  }
  return links;
}

KgInstance kg_instance(Rng& rng, std::size_t max_triples) {
  std::vector<Term> entities;
  const std::size_t n_entities = rng.between(2, 12);
  for (std::size_t i = 0; i < n_entities; ++i) {
    entities.push_back(Term::iri((i % 2 ? "http://dbpedia.org/resource/E" : "http://www.wikidata.org/entity/Q") +
                                 std::to_string(i)));
  }
  std::vector<Term> predicates;
  const std::size_t n_predicates = rng.between(1, 6);
  for (std::size_t i = 0; i < n_predicates; ++i) {
    predicates.push_back(Term::iri("http://ex.org/p" + std::to_string(i)));
  }
  predicates.push_back(Term::iri(std::string(factcheck::vocab::kRdfType)));
  std::vector<Term> classes;
  for (std::size_t i = 0; i < 3; ++i) classes.push_back(Term::iri("http://ex.org/C" + std::to_string(i)));
  const std::vector<std::string> lexicals{"1883-05-13", "1886-05-13", "Mt. Zeus", "x"};
  const std::vector<std::string> sources{"g1", "g2", "g3"};
  const std::vector<Term> blanks{Term::blank("b0"), Term::blank("b1")};

  auto any_resource = [&]() -> Term {
    return rng.chance(0.8) ? rng.pick(entities) : rng.pick(classes);
  };
  auto any_object = [&]() -> Term {
    switch (rng.below(10)) {
      case 0: return rng.pick(blanks);
      case 1:
      case 2:
      case 3: return with_random_tag(rng, rng.pick(lexicals));
      default: return any_resource();
    }
  };

  KgInstance inst{{}, Triple(entities[0], predicates[0], entities[0])};
  const std::size_t size_class = rng.below(3);
  const std::size_t n = size_class == 0   ? rng.between(0, 20)
                        : size_class == 1 ? rng.between(0, 200)
                                          : rng.between(0, max_triples);
  const std::size_t n_links = std::min<std::size_t>(n, rng.between(0, 10));
  for (std::size_t i = 0; i + n_links < n; ++i) {
    Term s = rng.chance(0.1) ? rng.pick(blanks) : any_resource();
    inst.triples.push_back({Triple(std::move(s), rng.pick(predicates), any_object()), rng.pick(sources)});
  }
  for (std::size_t i = 0; i < n_links; ++i) {
    const std::size_t kind = rng.below(4);
    Term a = kind == 1 ? rng.pick(predicates) : kind == 2 ? rng.pick(classes) : any_resource();
    Term b = kind == 1 ? rng.pick(predicates) : any_resource();
    if (kind == 3) b = rng.pick(blanks);  // ignored link
    static const std::string_view kLinkPredicates[] = {
        factcheck::vocab::kOwlSameAs, factcheck::vocab::kOwlEquivalentProperty,
        factcheck::vocab::kOwlEquivalentClass, factcheck::vocab::kOwlSameAs};
    inst.triples.push_back(
        {Triple(std::move(a), Term::iri(std::string(kLinkPredicates[kind])), std::move(b)), rng.pick(sources)});
  }

  // Facts are usually disguised copies of a stored triple.
  if (!inst.triples.empty() && rng.chance(0.7)) {
    const Triple& base = rng.pick(inst.triples).triple;
    Term s = base.subject.is_blank() || rng.chance(0.3) ? any_resource() : base.subject;
    Term p = rng.chance(0.3) ? rng.pick(predicates) : base.predicate;
    Term o = base.object;
    if (rng.chance(0.3)) o = any_object();
    else if (o.is_literal() && rng.chance(0.5)) o = with_random_tag(rng, o.value());
    inst.fact = Triple(std::move(s), std::move(p), std::move(o));
  } else {
    inst.fact = Triple(rng.chance(0.9) ? any_resource() : Term::iri("http://ex.org/absent"),
                       rng.pick(predicates), any_object());
  }
  return inst;
}

std::vector<ProvenancedTriple> candidates(Rng& rng, std::size_t max) {
  // Same local names under different namespaces verbalize identically.
  const std::vector<std::string> namespaces{"http://dbpedia.org/resource/", "http://ex.org/",
                                            "http://www.wikidata.org/entity/"};
  const std::vector<std::string> names{"El_Greco", "Aristotle", "View_of_Toledo", "Heraklion",
                                       "Odysseas_Elytis", "Crete", "Q868", "Zas"};
  const std::vector<std::string> props{"artist", "birthPlace", "birthDate", "associatedBand",
                                       "highestMount", "genre"};
  const std::vector<std::string> values{"1883-05-13", "1886-05-13", "384 BC", "Mt. Zeus",
                                        "Heraklion, Crete"};
  const std::vector<std::string> sources{"dbpedia", "wikidata", "yago"};
  std::vector<ProvenancedTriple> out;
  const std::size_t n = rng.between(0, max);
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Term s = Term::iri(rng.pick(namespaces) + rng.pick(names));
    Term p = Term::iri("http://dbpedia.org/ontology/" + rng.pick(props));
    Term o = rng.chance(0.5) ? Term::iri(rng.pick(namespaces) + rng.pick(names))
                             : Term::literal(rng.pick(values));
    out.push_back({Triple(std::move(s), std::move(p), std::move(o)), rng.pick(sources)});
  }
  return out;
}

}  // namespace gen
