#include "factcheck/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "factcheck/error.hpp"
#include "factcheck/log.hpp"
#include "factcheck/report.hpp"
#include "text_util.hpp"

namespace factcheck {

std::string_view to_string(Gold gold) {
  return gold == Gold::kCorrect ? "correct" : "erroneous";
}

std::string_view to_string(Part part) {
  switch (part) {
    case Part::kPersons: return "persons";
    case Part::kPlaces: return "places";
    case Part::kEvents: return "events";
    case Part::kOther: return "other";
  }
  return "?";
}

std::string_view to_string(OutcomeClass c) {
  static constexpr std::array<std::string_view, 4> kNames{"C1", "C2", "C3", "C4"};
  return kNames[static_cast<std::size_t>(c)];
}

std::optional<Gold> parse_gold(std::string_view s) {
  if (s == "correct") return Gold::kCorrect;
  if (s == "erroneous") return Gold::kErroneous;
  return std::nullopt;
}

std::optional<Part> parse_part(std::string_view s) {
  for (Part p : kAllParts) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

namespace {

Term record_iri(const std::string& value, const PrefixMap& prefixes, const char* field) {
  std::string_view v = value;
  if (v.size() >= 2 && v.front() == '<' && v.back() == '>') return Term::iri(std::string(v.substr(1, v.size() - 2)));
  if (const auto colon = v.find(':'); colon != std::string_view::npos) {
    if (auto expanded = prefixes.expand(v.substr(0, colon), v.substr(colon + 1))) {
      return Term::iri(std::move(*expanded));
    }
  }
  if (!is_valid_iri(v)) throw DomainError(std::string("field '") + field + "' is not an IRI: " + value);
  return Term::iri(value);
}

std::string required_string(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw DomainError(std::string("missing field '") + key + "'");
  if (!it->is_string()) throw DomainError(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw DomainError(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

BenchmarkRecord parse_record(std::string_view line, const PrefixMap& prefixes) {
  const auto obj = nlohmann::json::parse(line);
  if (!obj.is_object()) throw DomainError("record is not a JSON object");
  Term s = record_iri(required_string(obj, "s"), prefixes, "s");
  Term p = record_iri(required_string(obj, "p"), prefixes, "p");
  const std::string o_raw = required_string(obj, "o");
  const std::string o_kind = required_string(obj, "o_kind");
  std::optional<Term> o;
  if (o_kind == "iri") {
    o = record_iri(o_raw, prefixes, "o");
  } else if (o_kind == "literal") {
    auto datatype = optional_string(obj, "datatype");
    if (datatype) datatype = record_iri(*datatype, prefixes, "datatype").value();
    o = Term::literal(o_raw, std::move(datatype), optional_string(obj, "lang"));
  } else {
    throw DomainError("o_kind must be \"iri\" or \"literal\", got \"" + o_kind + "\"");
  }
  const std::string gold = required_string(obj, "gold");
  const auto g = parse_gold(gold);
  if (!g) throw DomainError("gold must be \"correct\" or \"erroneous\", got \"" + gold + "\"");
  const std::string part = required_string(obj, "part");
  const auto pt = parse_part(part);
  if (!pt) throw DomainError("unknown part \"" + part + "\"");
  return BenchmarkRecord{Triple(std::move(s), std::move(p), std::move(*o)), *g,
                         required_string(obj, "entity"), *pt};
}

}  // namespace

std::vector<BenchmarkRecord> parse_benchmark(std::string_view text, const PrefixMap& prefixes) {
  std::vector<BenchmarkRecord> out;
  std::size_t number = 0;
  for (std::string_view line : text_util::split_lines(text)) {
    ++number;
    if (text_util::trim(line).empty()) continue;
    try {
      out.push_back(parse_record(line, prefixes));
    } catch (const nlohmann::json::exception& e) {
      throw BenchmarkFormatError(number, std::string("invalid JSON: ") + e.what());
    } catch (const DomainError& e) {
      throw BenchmarkFormatError(number, e.what());
    }
  }
  return out;
}

std::vector<BenchmarkRecord> load_benchmark(const std::filesystem::path& path,
                                            const PrefixMap& prefixes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot read benchmark file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_benchmark(buf.str(), prefixes);
}

std::string benchmark_line(const BenchmarkRecord& r) {
  nlohmann::ordered_json j;
  j["s"] = r.fact.subject.value();
  j["p"] = r.fact.predicate.value();
  j["o"] = r.fact.object.value();
  j["o_kind"] = r.fact.object.is_iri() ? "iri" : "literal";
  if (r.fact.object.datatype()) j["datatype"] = *r.fact.object.datatype();
  if (r.fact.object.language()) j["lang"] = *r.fact.object.language();
  j["gold"] = to_string(r.gold);
  j["entity"] = r.entity;
  j["part"] = to_string(r.part);
  return j.dump();
}

bool has_contradiction(const ValidationResult& result) {
  if (result.matches.size() < 2) return false;
  const auto& best = result.matches.front();
  const Triple& b = best.triple.triple;
  for (std::size_t i = 1; i < result.matches.size(); ++i) {
    const auto& m = result.matches[i];
    const Triple& t = m.triple.triple;
    if (t.subject == b.subject && t.predicate == b.predicate && !(t.object == b.object) &&
        m.triple.source != best.triple.source && best.score - m.score <= kContradictionWindow) {
      return true;
    }
  }
  return false;
}

bool is_validated(const ValidationResult& result, double tau) {
  if (result.rule == Rule::kA) return true;
  if (result.matches.empty() || has_contradiction(result)) return false;
  return std::any_of(result.matches.begin(), result.matches.end(),
                     [tau](const RankedMatch& m) { return m.score >= tau; });
}

OutcomeClass classify(const ValidationResult& result, Gold gold, double tau) {
  const bool ok = is_validated(result, tau);
  if (gold == Gold::kCorrect) return ok ? OutcomeClass::kC1 : OutcomeClass::kC2;
  return ok ? OutcomeClass::kC3 : OutcomeClass::kC4;
}

std::size_t ClassCounts::classified() const {
  return by_class[0] + by_class[1] + by_class[2] + by_class[3];
}
std::size_t ClassCounts::gold_correct() const { return by_class[0] + by_class[1]; }
std::size_t ClassCounts::gold_erroneous() const { return by_class[2] + by_class[3]; }

double ClassCounts::percent(OutcomeClass c) const {
  const std::size_t group =
      (c == OutcomeClass::kC1 || c == OutcomeClass::kC2) ? gold_correct() : gold_erroneous();
  if (group == 0) return 0.0;
  return 100.0 * static_cast<double>((*this)[c]) / static_cast<double>(group);
}

std::string_view to_string(RuleRow row) {
  switch (row) {
    case RuleRow::kA: return "A. Same/Equivalent Triple";
    case RuleRow::kBSamePredicate: return "B. Same Subject Predicate";
    case RuleRow::kBSameObject: return "B. Same Subject Object";
    case RuleRow::kC: return "C. Most Similar Triples";
  }
  return "?";
}

RuleRow rule_row(const ValidationResult& result) {
  switch (result.rule) {
    case Rule::kA: return RuleRow::kA;
    case Rule::kB:
      return result.pair == PairKind::kSameObject ? RuleRow::kBSameObject
                                                  : RuleRow::kBSamePredicate;
    case Rule::kC: return RuleRow::kC;
  }
  return RuleRow::kC;
}

std::size_t histogram_bin(double score) {
  const double clamped = std::clamp(score, -1.0, 1.0);
  const auto bin = static_cast<std::size_t>(std::floor((clamped + 1.0) / kHistogramBinWidth));
  return std::min(bin, kHistogramBins - 1);
}

double histogram_bin_start(std::size_t bin) {
  return (static_cast<double>(bin) * 5.0 - 100.0) / 100.0;
}

double TimingSummary::mean_ms() const {
  return count == 0 ? 0.0 : to_ms(total) / static_cast<double>(count);
}

EvaluationReport evaluate(std::span<const BenchmarkRecord> records, const Backend& backend,
                          const EncoderHandle& encoder, const EvaluationConfig& config) {
  if (!(config.tau >= -1.0 && config.tau <= 1.0)) throw ConfigError("tau must lie in [-1, 1]");
  EvaluationReport report;
  report.k = config.validate.k;
  report.tau = config.tau;
  report.backend = config.backend.empty() ? backend.name() : config.backend;
  report.encoder = config.encoder.empty() ? encoder.model_name() : config.encoder;
  report.records.assign(records.begin(), records.end());

  std::vector<Triple> facts;
  facts.reserve(records.size());
  for (const auto& r : records) facts.push_back(r.fact);
  auto batch = validate_batch(facts, backend, encoder, config.validate, config.parallelism);

  report.outcomes.resize(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    auto& out = report.outcomes[i];
    auto& part = report.per_part[static_cast<std::size_t>(rec.part)];
    if (!batch[i].ok()) {
      out.error = std::move(batch[i].error);
      ++report.overall.errored;
      ++part.errored;
      continue;
    }
    out.result = std::move(batch[i].result);
    const ValidationResult& res = *out.result;
    const OutcomeClass c = classify(res, rec.gold, config.tau);
    out.outcome = c;
    ++report.overall[c];
    ++part[c];
    ++report.rule_matrix[static_cast<std::size_t>(rule_row(res))][static_cast<std::size_t>(c)];
    if (!res.matches.empty()) {
      ++report.histogram[histogram_bin(res.matches.front().score)][static_cast<std::size_t>(c)];
    }
    auto& by_rule = report.timing_by_rule[static_cast<std::size_t>(res.rule)];
    ++by_rule.count;
    by_rule.total += res.timings.total();
    auto& by_part = report.timing_by_part[static_cast<std::size_t>(rec.part)];
    ++by_part.count;
    by_part.total += res.timings.total();
  }
  return report;
}

namespace {

constexpr std::array<OutcomeClass, 4> kClasses{OutcomeClass::kC1, OutcomeClass::kC2,
                                               OutcomeClass::kC3, OutcomeClass::kC4};

bool part_present(const EvaluationReport& report, Part p) {
  return std::any_of(report.records.begin(), report.records.end(),
                     [p](const BenchmarkRecord& r) { return r.part == p; });
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

nlohmann::ordered_json counts_json(const ClassCounts& c) {
  nlohmann::ordered_json j;
  j["classified"] = c.classified();
  j["errored"] = c.errored;
  j["gold_correct"] = c.gold_correct();
  j["gold_erroneous"] = c.gold_erroneous();
  for (OutcomeClass k : kClasses) j[std::string(to_string(k))] = c[k];
  nlohmann::ordered_json pct;
  for (OutcomeClass k : kClasses) pct[std::string(to_string(k))] = round2(c.percent(k));
  j["percent"] = std::move(pct);
  return j;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Aligned plain-text table; the first column is left-aligned, the rest right.
std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::string line;
    for (std::size_t i = 0; i < rows[r].size(); ++i) {
      const std::string& cell = rows[r][i];
      const std::string pad(width[i] - cell.size(), ' ');
      if (i > 0) line += "  ";
      line += i == 0 ? cell + pad : pad + cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w;
      out += std::string(total + 2 * (width.size() - 1), '-') + "\n";
    }
  }
  return out;
}

}  // namespace

nlohmann::ordered_json report_json(const EvaluationReport& report, bool include_timings) {
  nlohmann::ordered_json j;
  j["config"] = {{"k", report.k},
                 {"tau", report.tau},
                 {"backend", report.backend},
                 {"encoder", report.encoder}};
  j["classification"] =
      "automatic proxy: validated when rule A applied or a top-K match scores >= tau; "
      "use the worksheet for manual annotation";
  j["overall"] = counts_json(report.overall);
  auto parts = nlohmann::ordered_json::array();
  for (Part p : kAllParts) {
    if (!part_present(report, p)) continue;
    auto pj = counts_json(report.per_part[static_cast<std::size_t>(p)]);
    pj["part"] = to_string(p);
    parts.push_back(std::move(pj));
  }
  j["parts"] = std::move(parts);

  auto rules = nlohmann::ordered_json::array();
  std::array<std::size_t, 4> column{};
  for (std::size_t r = 0; r < kRuleRows; ++r) {
    nlohmann::ordered_json row;
    row["rule"] = to_string(static_cast<RuleRow>(r));
    std::size_t total = 0;
    for (OutcomeClass c : kClasses) {
      const std::size_t n = report.rule_matrix[r][static_cast<std::size_t>(c)];
      row[std::string(to_string(c))] = n;
      column[static_cast<std::size_t>(c)] += n;
      total += n;
    }
    row["total"] = total;
    rules.push_back(std::move(row));
  }
  nlohmann::ordered_json total_row;
  total_row["rule"] = "Total";
  for (OutcomeClass c : kClasses) total_row[std::string(to_string(c))] = column[static_cast<std::size_t>(c)];
  total_row["total"] = column[0] + column[1] + column[2] + column[3];
  rules.push_back(std::move(total_row));
  j["rules"] = std::move(rules);

  auto bins = nlohmann::ordered_json::array();
  for (std::size_t b = 0; b < kHistogramBins; ++b) {
    nlohmann::ordered_json bin;
    bin["start"] = histogram_bin_start(b);
    bin["end"] = histogram_bin_start(b + 1);
    for (OutcomeClass c : kClasses) bin[std::string(to_string(c))] = report.histogram[b][static_cast<std::size_t>(c)];
    bins.push_back(std::move(bin));
  }
  j["histogram"] = {{"bin_width", kHistogramBinWidth}, {"bins", std::move(bins)}};

  auto facts = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const auto& rec = report.records[i];
    const auto& out = report.outcomes[i];
    nlohmann::ordered_json f;
    f["index"] = i;
    f["part"] = to_string(rec.part);
    f["entity"] = rec.entity;
    f["gold"] = to_string(rec.gold);
    if (out.result) {
      f["class"] = to_string(*out.outcome);
      f["result"] = result_json(*out.result, include_timings);
    } else {
      f["fact"] = serialize_triple(rec.fact);
      f["error"] = out.error;
    }
    facts.push_back(std::move(f));
  }
  j["facts"] = std::move(facts);

  if (include_timings) {
    nlohmann::ordered_json by_rule;
    for (Rule r : {Rule::kA, Rule::kB, Rule::kC}) {
      const auto& t = report.timing_by_rule[static_cast<std::size_t>(r)];
      by_rule[std::string(to_string(r))] = {{"count", t.count}, {"mean_ms", t.mean_ms()}};
    }
    nlohmann::ordered_json by_part;
    for (Part p : kAllParts) {
      if (!part_present(report, p)) continue;
      const auto& t = report.timing_by_part[static_cast<std::size_t>(p)];
      by_part[std::string(to_string(p))] = {{"count", t.count}, {"mean_ms", t.mean_ms()}};
    }
    j["timings"] = {{"per_rule", std::move(by_rule)}, {"per_part", std::move(by_part)}};
  }
  return j;
}

std::string report_tables(const EvaluationReport& report, bool include_timings) {
  std::string out;
  out += "backend: " + report.backend + "   encoder: " + report.encoder +
         "   k: " + std::to_string(report.k) + "   tau: " + fmt("%.3f", report.tau) + "\n";
  out += "classification: automatic proxy (cosine >= tau or rule A); see worksheet.csv\n\n";

  std::vector<std::vector<std::string>> rows{
      {"Collection", "Facts", "Errored", "C1", "C2", "C3", "C4", "%C1", "%C2", "%C3", "%C4"}};
  auto add = [&rows](const std::string& name, const ClassCounts& c) {
    std::vector<std::string> row{name, std::to_string(c.classified() + c.errored),
                                 std::to_string(c.errored)};
    for (OutcomeClass k : kClasses) row.push_back(std::to_string(c[k]));
    for (OutcomeClass k : kClasses) row.push_back(fmt("%.1f%%", c.percent(k)));
    rows.push_back(std::move(row));
  };
  add("All facts", report.overall);
  for (Part p : kAllParts) {
    if (part_present(report, p)) add(std::string(to_string(p)), report.per_part[static_cast<std::size_t>(p)]);
  }
  out += "Outcome classes\n" + table(rows) + "\n";

  rows = {{"Rule", "C1", "C2", "C3", "C4", "Total"}};
  std::array<std::size_t, 4> column{};
  for (std::size_t r = 0; r < kRuleRows; ++r) {
    std::vector<std::string> row{std::string(to_string(static_cast<RuleRow>(r)))};
    std::size_t total = 0;
    for (std::size_t c = 0; c < 4; ++c) {
      row.push_back(std::to_string(report.rule_matrix[r][c]));
      column[c] += report.rule_matrix[r][c];
      total += report.rule_matrix[r][c];
    }
    row.push_back(std::to_string(total));
    rows.push_back(std::move(row));
  }
  rows.push_back({"Total", std::to_string(column[0]), std::to_string(column[1]),
                  std::to_string(column[2]), std::to_string(column[3]),
                  std::to_string(column[0] + column[1] + column[2] + column[3])});
  out += "Rule usage\n" + table(rows) + "\n";

  rows = {{"Best score bin", "C1", "C2", "C3", "C4"}};
  for (std::size_t b = 0; b < kHistogramBins; ++b) {
    const auto& h = report.histogram[b];
    if (h[0] + h[1] + h[2] + h[3] == 0) continue;
    rows.push_back({fmt("%.2f", histogram_bin_start(b)) + " .. " + fmt("%.2f", histogram_bin_start(b + 1)),
                    std::to_string(h[0]), std::to_string(h[1]), std::to_string(h[2]),
                    std::to_string(h[3])});
  }
  out += "Cosine histogram (non-empty bins)\n" + table(rows);

  if (include_timings) {
    rows = {{"Rule", "Facts", "Mean ms"}};
    for (Rule r : {Rule::kA, Rule::kB, Rule::kC}) {
      const auto& t = report.timing_by_rule[static_cast<std::size_t>(r)];
      rows.push_back({std::string(to_string(r)), std::to_string(t.count), fmt("%.3f", t.mean_ms())});
    }
    out += "\nTiming per rule\n" + table(rows);
    rows = {{"Part", "Facts", "Mean ms"}};
    for (Part p : kAllParts) {
      if (!part_present(report, p)) continue;
      const auto& t = report.timing_by_part[static_cast<std::size_t>(p)];
      rows.push_back({std::string(to_string(p)), std::to_string(t.count), fmt("%.3f", t.mean_ms())});
    }
    out += "\nTiming per part\n" + table(rows);
  }
  return out;
}

std::string worksheet_csv(const EvaluationReport& report) {
  using text_util::csv_field;
  std::string out = "index,part,entity,fact,gold,rule,pair,candidates";
  for (std::size_t i = 1; i <= report.k; ++i) {
    const std::string n = std::to_string(i);
    out += ",match" + n + ",match" + n + "_source,match" + n + "_score";
  }
  out += ",auto_class,error,human_class\n";
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const auto& rec = report.records[i];
    const auto& o = report.outcomes[i];
    out += std::to_string(i) + "," + csv_field(to_string(rec.part)) + "," + csv_field(rec.entity) +
           "," + csv_field(serialize_triple(rec.fact)) + "," + std::string(to_string(rec.gold));
    if (o.result) {
      const auto& r = *o.result;
      out += "," + std::string(to_string(r.rule)) + "," + std::string(to_string(r.pair)) + "," +
             std::to_string(r.candidate_count);
      for (std::size_t m = 0; m < report.k; ++m) {
        if (m < r.matches.size()) {
          out += "," + csv_field(serialize_triple(r.matches[m].triple.triple)) + "," +
                 csv_field(r.matches[m].triple.source) + "," + fmt("%.6f", r.matches[m].score);
        } else {
          out += ",,,";
        }
      }
      out += "," + std::string(to_string(*o.outcome)) + ",,\n";
    } else {
      out += ",,,";
      for (std::size_t m = 0; m < report.k; ++m) out += ",,,";
      out += ",," + csv_field(o.error) + ",\n";
    }
  }
  return out;
}

std::string histogram_csv(const EvaluationReport& report) {
  std::string out = "bin_start,bin_end,C1,C2,C3,C4\n";
  for (std::size_t b = 0; b < kHistogramBins; ++b) {
    const auto& h = report.histogram[b];
    out += fmt("%.2f", histogram_bin_start(b)) + "," + fmt("%.2f", histogram_bin_start(b + 1)) +
           "," + std::to_string(h[0]) + "," + std::to_string(h[1]) + "," + std::to_string(h[2]) +
           "," + std::to_string(h[3]) + "\n";
  }
  return out;
}

BenchmarkStats benchmark_stats(std::span<const BenchmarkRecord> records,
                               const DereferenceCheck* check, std::size_t top_n,
                               const PrefixMap* prefixes) {
  BenchmarkStats stats;
  std::array<std::set<std::string>, 4> uris;
  std::array<std::set<std::string>, 4> props;
  std::array<std::map<std::string, PredicateRow>, 4> pred_counts;
  std::map<std::string, PredicateRow> all_preds;
  std::set<std::string> all_uris;
  std::set<std::string> all_props;

  for (const auto& r : records) {
    const auto pi = static_cast<std::size_t>(r.part);
    auto& ps = stats.per_part[pi];
    ++ps.total;
    (r.gold == Gold::kCorrect ? ps.correct : ps.erroneous)++;
    for (const Term* t : {&r.fact.subject, &r.fact.object}) {
      if (t->is_iri()) {
        uris[pi].insert(t->value());
        all_uris.insert(t->value());
      }
    }
    const std::string& p = r.fact.predicate.value();
    props[pi].insert(p);
    all_props.insert(p);
    for (auto* counts : {&pred_counts[pi], &all_preds}) {
      auto& row = (*counts)[p];
      ++row.total;
      (r.gold == Gold::kCorrect ? row.correct : row.erroneous)++;
    }
  }

  auto top = [&](const std::map<std::string, PredicateRow>& counts) {
    std::vector<PredicateRow> rows;
    for (const auto& [iri, row] : counts) {
      PredicateRow copy = row;
      copy.predicate = iri;
      rows.push_back(std::move(copy));
    }
    std::sort(rows.begin(), rows.end(), [](const PredicateRow& a, const PredicateRow& b) {
      if (a.total != b.total) return a.total > b.total;
      if (a.correct != b.correct) return a.correct > b.correct;
      return a.predicate < b.predicate;
    });
    if (rows.size() > top_n) rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(top_n), rows.end());
    if (prefixes != nullptr) {
      for (auto& row : rows) {
        if (auto c = prefixes->compact(row.predicate)) row.predicate = c->first + ":" + c->second;
      }
    }
    return rows;
  };

  std::map<std::string, bool> known;
  stats.dereferenceability_available = check != nullptr;
  stats.dereferenceability_note = check ? "checked against the configured endpoint"
                                        : "unavailable: no endpoint or knowledge graph configured";
  if (check != nullptr) {
    try {
      for (const auto* set : {&all_uris, &all_props}) {
        for (const auto& iri : *set) {
          if (!known.count(iri)) known[iri] = (*check)(iri);
        }
      }
    } catch (const Error& e) {
      stats.dereferenceability_available = false;
      stats.dereferenceability_note = std::string("unavailable: ") + e.what();
      logger()->warn("dereferenceability check failed: {}", e.what());
    }
  }
  auto count_known = [&known](const std::set<std::string>& set) {
    return static_cast<std::size_t>(
        std::count_if(set.begin(), set.end(), [&known](const std::string& s) { return known.at(s); }));
  };

  for (std::size_t pi = 0; pi < 4; ++pi) {
    auto& ps = stats.per_part[pi];
    ps.unique_uris = uris[pi].size();
    ps.unique_properties = props[pi].size();
    ps.top_predicates = top(pred_counts[pi]);
    if (stats.dereferenceability_available) {
      ps.dereferenceable_uris = count_known(uris[pi]);
      ps.dereferenceable_properties = count_known(props[pi]);
    }
    stats.total.total += ps.total;
    stats.total.correct += ps.correct;
    stats.total.erroneous += ps.erroneous;
    stats.total.unique_uris += ps.unique_uris;
    stats.total.unique_properties += ps.unique_properties;
    if (stats.dereferenceability_available) {
      stats.total.dereferenceable_uris = stats.total.dereferenceable_uris.value_or(0) + *ps.dereferenceable_uris;
      stats.total.dereferenceable_properties =
          stats.total.dereferenceable_properties.value_or(0) + *ps.dereferenceable_properties;
    }
  }
  stats.total.top_predicates = top(all_preds);
  stats.union_unique_uris = all_uris.size();
  stats.union_unique_properties = all_props.size();
  return stats;
}

namespace {

double percent_of(std::size_t n, std::size_t total) {
  return total == 0 ? 0.0 : round2(100.0 * static_cast<double>(n) / static_cast<double>(total));
}

nlohmann::ordered_json part_stats_json(const PartStats& ps) {
  nlohmann::ordered_json j;
  j["facts"] = ps.total;
  j["correct"] = ps.correct;
  j["correct_percent"] = percent_of(ps.correct, ps.total);
  j["erroneous"] = ps.erroneous;
  j["erroneous_percent"] = percent_of(ps.erroneous, ps.total);
  j["unique_uris"] = ps.unique_uris;
  j["unique_properties"] = ps.unique_properties;
  if (ps.dereferenceable_uris) {
    j["dereferenceable_uris"] = *ps.dereferenceable_uris;
    j["dereferenceable_properties"] = *ps.dereferenceable_properties;
  } else {
    j["dereferenceable_uris"] = "unavailable";
    j["dereferenceable_properties"] = "unavailable";
  }
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : ps.top_predicates) {
    rows.push_back({{"predicate", r.predicate},
                    {"total", r.total},
                    {"correct", r.correct},
                    {"erroneous", r.erroneous}});
  }
  j["top_predicates"] = std::move(rows);
  return j;
}

}  // namespace

nlohmann::ordered_json stats_json(const BenchmarkStats& stats) {
  nlohmann::ordered_json j;
  auto parts = nlohmann::ordered_json::array();
  for (Part p : kAllParts) {
    const auto& ps = stats.per_part[static_cast<std::size_t>(p)];
    if (ps.total == 0) continue;
    auto pj = part_stats_json(ps);
    pj["part"] = to_string(p);
    parts.push_back(std::move(pj));
  }
  j["parts"] = std::move(parts);
  j["total"] = part_stats_json(stats.total);
  j["union_unique_uris"] = stats.union_unique_uris;
  j["union_unique_properties"] = stats.union_unique_properties;
  j["dereferenceability"] = stats.dereferenceability_note;
  return j;
}

std::string stats_tables(const BenchmarkStats& stats) {
  auto pair = [](std::size_t n, const std::optional<std::size_t>& d) {
    return std::to_string(n) + " (" + (d ? std::to_string(*d) : std::string("n/a")) + ")";
  };
  auto share = [](std::size_t n, std::size_t total) {
    return std::to_string(n) + " (" + fmt("%.2f%%", percent_of(n, total)) + ")";
  };
  std::vector<std::vector<std::string>> rows{
      {"Part", "Facts", "Correct", "Erroneous", "Unique URIs (deref)", "Unique Properties (deref)"}};
  auto add = [&](const std::string& name, const PartStats& ps) {
    rows.push_back({name, std::to_string(ps.total), share(ps.correct, ps.total),
                    share(ps.erroneous, ps.total), pair(ps.unique_uris, ps.dereferenceable_uris),
                    pair(ps.unique_properties, ps.dereferenceable_properties)});
  };
  for (Part p : kAllParts) {
    const auto& ps = stats.per_part[static_cast<std::size_t>(p)];
    if (ps.total > 0) add(std::string(to_string(p)), ps);
  }
  add("Total", stats.total);
  std::string out = "Benchmark statistics\n" + table(rows);
  out += "dereferenceability: " + stats.dereferenceability_note + "\n";

  auto predicate_table = [&](const std::string& title, const std::vector<PredicateRow>& top) {
    std::vector<std::vector<std::string>> t{{"ID", "Predicate", "Total", "Correct", "Erroneous"}};
    for (std::size_t i = 0; i < top.size(); ++i) {
      t.push_back({std::to_string(i + 1), top[i].predicate, std::to_string(top[i].total),
                   std::to_string(top[i].correct), std::to_string(top[i].erroneous)});
    }
    out += "\n" + title + "\n" + table(t);
  };
  for (Part p : kAllParts) {
    const auto& ps = stats.per_part[static_cast<std::size_t>(p)];
    if (ps.total > 0) predicate_table("Most used predicates: " + std::string(to_string(p)), ps.top_predicates);
  }
  return out;
}

}  // namespace factcheck
