#include "factcheck/synth.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>

#include "factcheck/encoder.hpp"
#include "factcheck/error.hpp"
#include "factcheck/kg_store.hpp"
#include "factcheck/verbalizer.hpp"

namespace factcheck {

namespace {

const std::string kDbr = "http://dbpedia.org/resource/";
const std::string kDbo = "http://dbpedia.org/ontology/";
const std::string kWkd = "http://www.wikidata.org/entity/";
const std::string kWkp = "http://www.wikidata.org/prop/direct/";
const std::string kXsd = "http://www.w3.org/2001/XMLSchema#";

constexpr std::array<const char*, 24> kSyllables{
    "ka", "lo", "me", "ni", "pa", "ro", "si", "ta", "the", "xe", "vri", "dro",
    "pho", "sto", "gla", "mi", "ne", "ri", "kos", "lis", "das", "tra", "zo", "ge"};

constexpr std::array<const char*, 32> kWords{
    "quiet",  "orange", "umbrella", "marble",  "violin",  "harbour", "lantern", "copper",
    "meadow", "silver", "garden",   "thunder", "velvet",  "compass", "biscuit", "crimson",
    "falcon", "pepper", "saddle",   "whisper", "cobalt",  "ember",   "juniper", "nectar",
    "pillow", "quartz", "rocket",   "tundra",  "walnut",  "yonder",  "zephyr",  "bramble"};

struct PredicateInfo {
  const char* dbo;
  const char* wkp;
  bool literal;
  const char* datatype;  // nullptr for plain literals / IRIs
};

constexpr std::array<PredicateInfo, 16> kPredicates{{
    {"birthDate", "P569", true, "date"},
    {"populationTotal", "P1082", true, "integer"},
    {"elevation", "P2044", true, "integer"},
    {"deathDate", "P570", true, "date"},
    {"foundingYear", "P571", true, "gYear"},
    {"height", "P2048", true, "decimal"},
    {"birthPlace", "P19", false, nullptr},
    {"deathPlace", "P20", false, nullptr},
    {"almaMater", "P69", false, nullptr},
    {"spouse", "P26", false, nullptr},
    {"influencedBy", "P737", false, nullptr},
    {"notableWork", "P800", false, nullptr},
    {"residence", "P551", false, nullptr},
    {"award", "P166", false, nullptr},
    {"occupation", "P106", false, nullptr},
    {"nationality", "P27", false, nullptr},
}};
constexpr std::size_t kLiteralPredicates = 6;

constexpr std::array<const char*, 10> kUnusedPredicates{
    "favouriteBeverage", "luckyNumber",      "petName",      "hobbyActivity", "shoeManufacturer",
    "bicycleBrand",      "preferredColour", "childhoodNickname", "breakfastFood", "ringtoneMelody"};

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  std::string word(std::size_t syllables) {
    std::string w;
    for (std::size_t i = 0; i < syllables; ++i) w += kSyllables[pick(kSyllables.size())];
    w[0] = static_cast<char>(w[0] - 'a' + 'A');
    return w;
  }

  // Unique local name of `words` capitalised words.
  std::string name(std::size_t words, std::size_t min_syll, std::size_t max_syll) {
    for (;;) {
      std::string n;
      for (std::size_t i = 0; i < words; ++i) {
        if (i > 0) n += '_';
        n += word(min_syll + pick(max_syll - min_syll + 1));
      }
      if (used_.insert(n).second) return n;
    }
  }

  std::string digits(std::size_t n) {
    std::string s(1, static_cast<char>('1' + pick(9)));
    while (s.size() < n) s += static_cast<char>('0' + pick(10));
    return s;
  }

  std::string literal_value(const PredicateInfo& p) {
    const std::string d(p.datatype);
    if (d == "date") {
      char buf[16];
      std::snprintf(buf, sizeof buf, "%04zu-%02zu-%02zu", 1800 + pick(200), 1 + pick(12), 1 + pick(28));
      return buf;
    }
    if (d == "gYear") return std::to_string(1700 + pick(300));
    if (d == "decimal") return "1." + digits(2);
    if (std::string(p.dbo) == "populationTotal") return digits(5 + pick(2));
    return digits(3 + pick(2));
  }

  std::string phrase(std::size_t words) {
    std::string s;
    for (std::size_t i = 0; i < words; ++i) {
      if (i > 0) s += ' ';
      s += kWords[pick(kWords.size())];
    }
    return s;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[pick(i)]);
  }

 private:
  std::mt19937_64 rng_;
  std::set<std::string> used_;
};

Term dbr(const std::string& local) { return Term::iri(kDbr + local); }
Term dbo(const char* local) { return Term::iri(kDbo + local); }

Term literal_of(const PredicateInfo& p, std::string value) {
  return Term::literal(std::move(value), kXsd + p.datatype);
}

double similarity(const FallbackEncoder& enc, const std::string& a, const std::string& b) {
  const std::vector<std::string> texts{a, b};
  const auto v = enc.encode(texts);
  return cosine(v[0], v[1]);
}

struct Entity {
  std::string local;
  std::vector<Triple> triples;  // dbpedia triples with this subject
};

}  // namespace

SyntheticBenchmark make_synthetic_benchmark(std::uint64_t seed) {
  Generator gen(seed);
  const FallbackEncoder enc;

  // Entity groups: long names (verbatim, literal-object and near-miss facts),
  // linked to wikidata, short names (unrelated facts), miscellaneous.
  std::vector<Entity> longs(20), linked(10), shorts(20), misc(10);
  for (auto& e : longs) e.local = gen.name(3, 3, 4);
  for (auto& e : linked) e.local = gen.name(2, 2, 3);
  for (auto& e : shorts) e.local = gen.name(1, 2, 2);
  for (auto& e : misc) e.local = gen.name(2, 2, 3);
  std::vector<std::string> concepts;
  for (int i = 0; i < 20; ++i) concepts.push_back(gen.name(1, 3, 4));

  std::vector<const Entity*> object_pool;
  for (const auto& e : misc) object_pool.push_back(&e);
  for (const auto& e : linked) object_pool.push_back(&e);

  std::map<std::string, std::string> wikidata_id;  // dbr local -> Q id
  for (std::size_t i = 0; i < linked.size(); ++i) wikidata_id[linked[i].local] = "Q" + std::to_string(1001 + i * 7);

  auto populate = [&](Entity& e) {
    std::vector<std::size_t> lit{0, 1, 2, 3 + gen.pick(3)};
    std::vector<std::size_t> iri;
    for (std::size_t i = kLiteralPredicates; i < kPredicates.size(); ++i) iri.push_back(i);
    gen.shuffle(iri);
    iri.resize(5);
    std::sort(iri.begin(), iri.end());
    for (std::size_t pi : lit) {
      const auto& p = kPredicates[pi];
      e.triples.emplace_back(dbr(e.local), dbo(p.dbo), literal_of(p, gen.literal_value(p)));
    }
    for (std::size_t pi : iri) {
      const auto& p = kPredicates[pi];
      std::string target;
      do {
        target = gen.pick(2) == 0 ? concepts[gen.pick(concepts.size())]
                                  : object_pool[gen.pick(object_pool.size())]->local;
      } while (target == e.local);
      e.triples.emplace_back(dbr(e.local), dbo(p.dbo), dbr(target));
    }
  };
  for (auto* group : {&longs, &linked, &shorts, &misc}) {
    for (auto& e : *group) populate(e);
  }

  SyntheticBenchmark out;
  for (const auto* group : {&longs, &linked, &shorts, &misc}) {
    for (const auto& e : *group) {
      for (const auto& t : e.triples) out.kg.push_back({t, "dbpedia"});
    }
  }

  auto to_wikidata = [&](const Term& t) -> Term {
    if (!t.is_iri() || !t.value().starts_with(kDbr)) return t;
    auto it = wikidata_id.find(t.value().substr(kDbr.size()));
    return it == wikidata_id.end() ? t : Term::iri(kWkd + it->second);
  };
  auto wkp_of = [](const Term& predicate) -> Term {
    for (const auto& p : kPredicates) {
      if (predicate.value() == kDbo + p.dbo) return Term::iri(kWkp + p.wkp);
    }
    throw Error("no wikidata property for " + predicate.value());
  };

  for (const auto& p : kPredicates) {
    out.kg.push_back({Triple(Term::iri(kWkp + p.wkp), Term::iri(std::string(vocab::kOwlEquivalentProperty)),
                             dbo(p.dbo)),
                      "wikidata"});
  }
  for (auto& e : linked) {
    const Term q = Term::iri(kWkd + wikidata_id[e.local]);
    out.kg.push_back({Triple(q, Term::iri(std::string(vocab::kOwlSameAs)), dbr(e.local)), "wikidata"});
    std::string label = e.local;
    std::replace(label.begin(), label.end(), '_', ' ');
    out.kg.push_back({Triple(q, Term::iri(std::string(vocab::kRdfsLabel)), Term::literal(label, std::nullopt, "en")),
                      "wikidata"});
    // The wikidata copies restate the first literal and first IRI fact.
    for (std::size_t idx : {std::size_t{0}, std::size_t{4}}) {
      const Triple& t = e.triples[idx];
      out.kg.push_back({Triple(q, wkp_of(t.predicate), to_wikidata(t.object)), "wikidata"});
    }
  }

  const KnowledgeGraph kg(out.kg, "synthetic");
  auto sentence = [&kg](const Triple& t) { return convert_triple(t, &kg).sentence; };
  std::set<std::string> kg_literals;
  for (const auto& pt : out.kg) {
    if (pt.triple.object.is_literal()) kg_literals.insert(pt.triple.object.value());
  }

  auto add = [&out](Triple fact, Gold gold, OutcomeClass cls, Rule rule, std::string entity) {
    out.records.push_back({std::move(fact), gold, std::move(entity), Part::kOther});
    out.expected_class.push_back(cls);
    out.expected_rule.push_back(rule);
  };
  auto entity_name = [](const std::string& local) {
    std::string s = local;
    std::replace(s.begin(), s.end(), '_', ' ');
    return s;
  };

  // C1 through rule A, verbatim.
  for (std::size_t i = 0; i < 10; ++i) {
    const auto& e = longs[i];
    add(e.triples[gen.pick(e.triples.size())], Gold::kCorrect, OutcomeClass::kC1, Rule::kA,
        entity_name(e.local));
  }
  // C1 through rule A, stated with wikidata identifiers.
  for (auto& e : linked) {
    const Triple& t = e.triples[1 + gen.pick(3)];
    add(Triple(to_wikidata(t.subject), wkp_of(t.predicate), to_wikidata(t.object)), Gold::kCorrect,
        OutcomeClass::kC1, Rule::kA, entity_name(e.local));
  }
  // C1 through rule B: the object IRI restated as the literal it reads as.
  for (std::size_t i = 10; i < 20; ++i) {
    const auto& e = longs[i];
    const Triple& t = e.triples[kLiteralPredicates - 2 + gen.pick(5)];
    add(Triple(t.subject, t.predicate, Term::literal(convert_term(t.object, &kg))), Gold::kCorrect,
        OutcomeClass::kC1, Rule::kB, entity_name(e.local));
  }
  // C3: a near-identical wrong value for a literal the KG knows.
  {
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < longs.size(); ++i) {
      for (std::size_t j = 0; j < 3; ++j) slots.emplace_back(i, j);
    }
    gen.shuffle(slots);
    std::size_t made = 0;
    for (const auto& [ei, ti] : slots) {
      if (made == 30) break;
      const Triple& t = longs[ei].triples[ti];
      std::string value = t.object.value();
      const std::size_t last = value.find_last_of("0123456789");
      const int digit = value[last] - '0';
      value[last] = static_cast<char>('0' + (digit + 1 + static_cast<int>(gen.pick(8))) % 10);
      if (kg_literals.count(value)) continue;
      Triple fact(t.subject, t.predicate, Term::literal(value, t.object.datatype()));
      if (similarity(enc, sentence(fact), sentence(t)) < kSynthTau + 0.02) continue;
      add(std::move(fact), Gold::kErroneous, OutcomeClass::kC3, Rule::kB, entity_name(longs[ei].local));
      ++made;
    }
    if (made < 30) throw Error("synthetic generator: too few near-miss facts");
  }
  // C2 and C4 through rule C: unrelated statements about short-named
  // entities, whose best candidate stays well below tau.
  for (std::size_t i = 0; i < 30; ++i) {
    const auto& e = shorts[i % shorts.size()];
    std::vector<std::string> mentions;
    for (const auto& pt : out.kg) {
      if (pt.triple.subject == dbr(e.local) || pt.triple.object == dbr(e.local)) {
        mentions.push_back(sentence(pt.triple));
      }
    }
    bool made = false;
    for (int attempt = 0; attempt < 100 && !made; ++attempt) {
      const std::string value = gen.phrase(3);
      if (kg_literals.count(value)) continue;
      Triple fact(dbr(e.local), dbo(kUnusedPredicates[gen.pick(kUnusedPredicates.size())]),
                  Term::literal(value));
      const std::string s = sentence(fact);
      double best = -1.0;
      for (const auto& m : mentions) best = std::max(best, similarity(enc, s, m));
      if (best >= kSynthTau - 0.2) continue;
      const bool correct = i % 2 == 0;
      add(std::move(fact), correct ? Gold::kCorrect : Gold::kErroneous,
          correct ? OutcomeClass::kC2 : OutcomeClass::kC4, Rule::kC, entity_name(e.local));
      made = true;
    }
    if (!made) throw Error("synthetic generator: no unrelated fact found");
  }
  // C2 and C4 through rule C with no candidates: entities the KG lacks.
  for (std::size_t i = 0; i < 30; ++i) {
    const std::string local = gen.name(2, 2, 3);
    const auto& p = kPredicates[gen.pick(kPredicates.size())];
    Term object = p.literal ? literal_of(p, gen.literal_value(p)) : dbr(concepts[gen.pick(concepts.size())]);
    const bool correct = i % 2 == 0;
    add(Triple(dbr(local), dbo(p.dbo), std::move(object)), correct ? Gold::kCorrect : Gold::kErroneous,
        correct ? OutcomeClass::kC2 : OutcomeClass::kC4, Rule::kC, entity_name(local));
  }

  std::vector<std::size_t> order(out.records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  gen.shuffle(order);
  SyntheticBenchmark shuffled;
  shuffled.kg = std::move(out.kg);
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto rec = out.records[order[i]];
    rec.part = kAllParts[i % kAllParts.size()];
    shuffled.records.push_back(std::move(rec));
    shuffled.expected_class.push_back(out.expected_class[order[i]]);
    shuffled.expected_rule.push_back(out.expected_rule[order[i]]);
  }
  return shuffled;
}

namespace {

struct TopRow {
  const char* predicate;  // prefixed form
  std::size_t total;
  std::size_t correct;
};

struct PartSpec {
  Part part;
  const char* label;
  std::size_t facts;
  std::size_t correct;
  std::size_t entities;
  std::size_t unique_uris;
  std::size_t unique_properties;
  std::array<TopRow, 10> top;
};

const std::array<PartSpec, 3> kPaperParts{{
    {Part::kPersons, "Person", 1000, 812, 100, 525, 109,
     {{{"dbo:occupation", 102, 97}, {"dbo:birthDate", 90, 60}, {"rdf:type", 85, 85},
       {"dbo:deathDate", 83, 63}, {"dbo:birthPlace", 78, 61}, {"dbo:nationality", 74, 74},
       {"dbo:deathPlace", 69, 63}, {"dbo:influenced", 33, 19}, {"dbo:notableWork", 21, 17},
       {"dbo:field", 20, 17}}}},
    {Part::kPlaces, "Place", 500, 319, 50, 219, 85,
     {{{"rdf:type", 56, 56}, {"dbo:country", 51, 51}, {"dbo:elevation", 36, 11},
       {"dbo:location", 21, 20}, {"dbo:population", 19, 4}, {"dbo:areaTotal", 19, 0},
       {"dbo:timeZone", 17, 17}, {"dbo:settlement", 17, 14}, {"dbo:locatedIn", 15, 15},
       {"dbo:length", 14, 1}}}},
    {Part::kEvents, "Event", 500, 330, 50, 237, 140,
     {{{"dbo:date", 52, 29}, {"dbo:commander", 27, 3}, {"dbo:result", 20, 14},
       {"rdf:type", 19, 19}, {"dbo:country", 18, 18}, {"dbo:magnitude", 15, 7},
       {"dbo:casualties", 14, 6}, {"dbo:depth", 13, 2}, {"dbo:place", 11, 10},
       {"dbo:combatant", 10, 9}}}},
}};

bool literal_valued(std::string_view local) {
  static const std::set<std::string_view> kLiteral{
      "birthDate", "deathDate", "elevation", "population", "areaTotal", "length",
      "date",      "magnitude", "casualties", "depth",     "result"};
  return kLiteral.count(local) > 0;
}

std::string padded(std::size_t n, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, n);
  return buf;
}

}  // namespace

std::vector<BenchmarkRecord> make_paper_proportioned_benchmark() {
  const PrefixMap prefixes = PrefixMap::defaults();
  std::vector<BenchmarkRecord> out;
  for (const PartSpec& spec : kPaperParts) {
    struct Slot {
      std::string predicate;  // full IRI
      bool literal;
      Gold gold;
    };
    std::vector<Slot> slots;
    std::size_t top_total = 0;
    std::size_t top_correct = 0;
    for (const TopRow& row : spec.top) {
      const std::string_view pn(row.predicate);
      const auto colon = pn.find(':');
      const std::string iri = *prefixes.expand(pn.substr(0, colon), pn.substr(colon + 1));
      const bool lit = literal_valued(pn.substr(colon + 1));
      for (std::size_t i = 0; i < row.total; ++i) {
        slots.push_back({iri, lit, i < row.correct ? Gold::kCorrect : Gold::kErroneous});
      }
      top_total += row.total;
      top_correct += row.correct;
    }
    // The remaining facts spread evenly over the other properties, each used
    // fewer times than the tenth most frequent one.
    const std::size_t generic = spec.unique_properties - spec.top.size();
    const std::size_t rest = spec.facts - top_total;
    std::size_t rest_correct = spec.correct - top_correct;
    const std::string lower = [&] {
      std::string s = spec.label;
      s[0] = static_cast<char>(s[0] - 'A' + 'a');
      return s;
    }();
    for (std::size_t g = 0; g < generic; ++g) {
      const std::size_t n = rest / generic + (g < rest % generic ? 1 : 0);
      if (n >= spec.top.back().total) throw Error("paper benchmark: generic predicate too frequent");
      const std::string iri = "http://dbpedia.org/ontology/" + lower + "Attribute" + padded(g + 1, 3);
      for (std::size_t i = 0; i < n; ++i) {
        const Gold gold = rest_correct > 0 ? Gold::kCorrect : Gold::kErroneous;
        if (rest_correct > 0) --rest_correct;
        slots.push_back({iri, g % 2 == 1, gold});
      }
    }

    const std::size_t fresh_objects = spec.unique_uris - spec.entities;
    std::size_t iri_slots = 0;
    for (const auto& s : slots) iri_slots += s.literal ? 0 : 1;
    if (iri_slots < fresh_objects) throw Error("paper benchmark: too few IRI-valued facts");

    std::size_t next_object = 0;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const Slot& s = slots[i];
      const std::size_t entity = i % spec.entities;
      const std::string subject = kDbr + "Greek_" + spec.label + "_" + padded(entity + 1, 3);
      Term object = s.literal
                        ? Term::literal("value " + std::to_string(i + 1))
                        : Term::iri(kDbr + spec.label + "_Object_" +
                                    padded(next_object++ % fresh_objects + 1, 3));
      out.push_back({Triple(Term::iri(subject), Term::iri(s.predicate), std::move(object)), s.gold,
                     "Greek " + std::string(spec.label) + " " + padded(entity + 1, 3), spec.part});
    }
  }
  return out;
}

}  // namespace factcheck
