#include "factcheck/remote.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "factcheck/error.hpp"
#include "factcheck/log.hpp"
#include "http.hpp"
#include "json.hpp"
#include "text_util.hpp"

namespace factcheck {

using nlohmann::json;

void EndpointConfig::validate() const {
  if (name.empty()) throw ConfigError("endpoint name must not be empty");
  if (timeout.count() <= 0) throw ConfigError("endpoint '" + name + "': timeout must be > 0");
  if (!(rate_limit > 0.0)) throw ConfigError("endpoint '" + name + "': rate limit must be > 0");
  if (max_retries < 0) throw ConfigError("endpoint '" + name + "': max retries must be >= 0");
  if (candidate_cap == 0) throw ConfigError("endpoint '" + name + "': candidate cap must be > 0");
  http::parse_url(base_url);
}

std::vector<EndpointConfig> parse_endpoint_config(std::string_view text) {
  std::vector<EndpointConfig> out;
  std::size_t line_no = 0;
  for (std::string_view line : text_util::split_lines(text)) {
    ++line_no;
    line = text_util::trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.emplace_back(text_util::trim(line.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    const std::string where = "endpoint config line " + std::to_string(line_no);
    if (fields.size() != 5) throw ConfigError(where + ": expected name, kind, url, timeout, rate");
    EndpointConfig cfg;
    cfg.name = fields[0];
    if (fields[1] == "sparql") {
      cfg.kind = EndpointKind::kSparql;
    } else if (fields[1] == "fact-service") {
      cfg.kind = EndpointKind::kFactService;
    } else {
      throw ConfigError(where + ": unknown kind '" + fields[1] + "'");
    }
    cfg.base_url = fields[2];
    try {
      cfg.timeout = std::chrono::milliseconds(static_cast<long long>(std::stod(fields[3]) * 1000.0));
      cfg.rate_limit = std::stod(fields[4]);
    } catch (const std::exception&) {
      throw ConfigError(where + ": timeout and rate must be numbers");
    }
    cfg.validate();
    out.push_back(std::move(cfg));
  }
  return out;
}

RateLimiter::RateLimiter(double per_second)
    : interval_(std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(1.0 / per_second))),
      next_(std::chrono::steady_clock::now()) {
  if (!(per_second > 0.0)) throw ConfigError("rate limit must be > 0");
}

void RateLimiter::acquire() {
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(mutex_);
    slot = std::max(next_, std::chrono::steady_clock::now());
    next_ = slot + interval_;
  }
  std::this_thread::sleep_until(slot);
}

RemoteEndpoint::RemoteEndpoint(EndpointConfig config) : config_(std::move(config)) {
  config_.validate();
  const auto url = http::parse_url(config_.base_url);
  origin_ = url.origin;
  path_ = url.path;
  limiter_ = std::make_unique<RateLimiter>(config_.rate_limit);
}

std::string RemoteEndpoint::get(const std::string& suffix, const std::string& accept) const {
  const http::Url url{origin_, path_};
  std::string target = path_ + suffix;
  if (path_.ends_with('/') && suffix.starts_with('/')) target.erase(path_.size() - 1, 1);
  for (int attempt = 0;; ++attempt) {
    limiter_->acquire();
    ++requests_;
    std::string failure;
    try {
      const auto resp = http::get(url, target, {{"Accept", accept}}, config_.timeout);
      if (resp.status == 200) return resp.body;
      const bool transient = resp.status == 429 || resp.status == 502 || resp.status == 503 ||
                             resp.status == 504;
      if (!transient) {
        throw ProtocolError(config_.name + ": HTTP " + std::to_string(resp.status) + " from " +
                            origin_ + target.substr(0, target.find('?')));
      }
      failure = "HTTP " + std::to_string(resp.status);
    } catch (const TransportError& e) {
      failure = e.what();
    }
    if (attempt >= config_.max_retries) {
      throw TransportError(config_.name + ": giving up after " + std::to_string(attempt + 1) +
                           " attempt(s): " + failure);
    }
    ++retries_;
    logger()->warn("{}: retry {}/{} after transport error: {}", config_.name, attempt + 1,
                   config_.max_retries, failure);
    std::this_thread::sleep_for(config_.retry_backoff * (attempt + 1));
  }
}

namespace {

std::string escape_sparql_string(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

void require_grounded(const Term& t, const char* what) {
  if (t.is_blank()) throw DomainError(std::string(what) + ": blank nodes cannot be queried remotely");
}

// Literal datatype and language are ignored for identity, as in queries.
std::string exact_key(const Triple& t) {
  return sparql::term(t.subject) + ' ' + sparql::term(t.predicate) + ' ' + sparql::term(t.object);
}

// Keeps one triple per exact key, or with `per_source` drops only repeated
// (triple, source) pairs.
void sort_and_dedup(std::vector<ProvenancedTriple>& v, bool per_source = false) {
  sort_canonical(v);
  std::set<std::string> seen;
  std::erase_if(v, [&](const ProvenancedTriple& pt) {
    std::string key = per_source ? serialize_triple(pt.triple) + "\n" + pt.source
                                 : exact_key(pt.triple);
    return !seen.insert(std::move(key)).second;
  });
}

std::optional<Term> json_term(const json& binding) {
  const std::string type = binding.at("type").get<std::string>();
  const std::string value = binding.at("value").get<std::string>();
  try {
    if (type == "uri") return Term::iri(value);
    if (type == "bnode") {
      std::string label;
      for (char c : value) label += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
      return Term::blank(label.empty() ? "b" : label);
    }
    if (type == "literal" || type == "typed-literal") {
      std::optional<std::string> datatype;
      std::optional<std::string> lang;
      if (binding.contains("datatype")) datatype = binding["datatype"].get<std::string>();
      if (binding.contains("xml:lang")) lang = binding["xml:lang"].get<std::string>();
      if (lang && lang->empty()) lang.reset();
      if (datatype && lang) datatype.reset();
      return Term::literal(value, datatype, lang);
    }
  } catch (const DomainError& e) {
    logger()->debug("skipping unusable binding value '{}': {}", value, e.what());
    return std::nullopt;
  }
  throw ProtocolError("unknown binding type '" + type + "'");
}

EntityTriples apply_cap(std::vector<ProvenancedTriple> triples, std::size_t cap) {
  sort_and_dedup(triples, /*per_source=*/true);
  EntityTriples out;
  out.truncated = triples.size() > cap;
  if (out.truncated) triples.erase(triples.begin() + static_cast<std::ptrdiff_t>(cap), triples.end());
  out.triples = std::move(triples);
  return out;
}

}  // namespace

namespace sparql {

std::string term(const Term& t) {
  switch (t.kind()) {
    case TermKind::kIri: return "<" + t.value() + ">";
    case TermKind::kLiteral: return "\"" + escape_sparql_string(t.value()) + "\"";
    case TermKind::kBlank: return "_:" + t.value();
  }
  return {};
}

std::string ask_triple(const Triple& t) {
  return "ASK { " + term(t.subject) + " " + term(t.predicate) + " " + term(t.object) + " }";
}

std::string select_sp(const Term& entity, const Term& predicate) {
  return "SELECT ?o WHERE { " + term(entity) + " " + term(predicate) + " ?o }";
}

std::string select_so(const Term& entity, const Term& object) {
  return "SELECT ?p WHERE { " + term(entity) + " ?p " + term(object) + " }";
}

std::string select_as_subject(const Term& entity, std::size_t limit) {
  return "SELECT ?p ?o WHERE { " + term(entity) + " ?p ?o } LIMIT " + std::to_string(limit);
}

std::string select_as_object(const Term& entity, std::size_t limit) {
  return "SELECT ?s ?p WHERE { ?s ?p " + term(entity) + " } LIMIT " + std::to_string(limit);
}

std::string ask_mentions(std::string_view uri) {
  const std::string u = "<" + std::string(uri) + ">";
  return "ASK { { " + u + " ?p ?o } UNION { ?s " + u + " ?o } UNION { ?s ?p " + u + " } }";
}

}  // namespace sparql

SparqlClient::SparqlClient(EndpointConfig config) : endpoint_(std::move(config)) {
  if (endpoint_.config().kind != EndpointKind::kSparql) {
    throw ConfigError("SparqlClient requires a sparql endpoint");
  }
}

bool SparqlClient::run_ask(const std::string& query) const {
  logger()->debug("{} query: {}", name(), query);
  const std::string body =
      endpoint_.get("?query=" + text_util::percent_encode(query), "application/sparql-results+json");
  try {
    const auto doc = json::parse(body);
    if (!doc.contains("boolean") || !doc["boolean"].is_boolean()) {
      throw ProtocolError(name() + ": ASK response without a boolean");
    }
    return doc["boolean"].get<bool>();
  } catch (const json::exception& e) {
    throw ProtocolError(name() + ": malformed ASK response: " + e.what());
  }
}

std::vector<std::vector<std::pair<std::string, Term>>> SparqlClient::run_select(
    const std::string& query) const {
  logger()->debug("{} query: {}", name(), query);
  const std::string body =
      endpoint_.get("?query=" + text_util::percent_encode(query), "application/sparql-results+json");
  std::vector<std::vector<std::pair<std::string, Term>>> rows;
  try {
    const auto doc = json::parse(body);
    for (const auto& binding : doc.at("results").at("bindings")) {
      std::vector<std::pair<std::string, Term>> row;
      bool usable = true;
      for (const auto& [var, value] : binding.items()) {
        auto t = json_term(value);
        if (!t) {
          usable = false;
          break;
        }
        row.emplace_back(var, std::move(*t));
      }
      if (usable) rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw ProtocolError(name() + ": malformed SELECT response: " + e.what());
  }
  return rows;
}

namespace {
const Term* find_var(const std::vector<std::pair<std::string, Term>>& row, std::string_view var) {
  for (const auto& [name, t] : row) {
    if (name == var) return &t;
  }
  return nullptr;
}

std::optional<ProvenancedTriple> make_triple(const Term* s, const Term* p, const Term* o,
                                             const std::string& source) {
  if (s == nullptr || p == nullptr || o == nullptr) {
    throw ProtocolError("SELECT row is missing a projected variable");
  }
  try {
    return ProvenancedTriple{Triple(*s, *p, *o), source};
  } catch (const DomainError&) {
    return std::nullopt;
  }
}
}  // namespace

bool SparqlClient::ask_equivalent(const Triple& t) const {
  require_grounded(t.subject, "ask_equivalent");
  require_grounded(t.object, "ask_equivalent");
  return run_ask(sparql::ask_triple(t));
}

std::vector<ProvenancedTriple> SparqlClient::select_sp(const Term& entity,
                                                       const Term& predicate) const {
  require_grounded(entity, "select_sp");
  std::vector<ProvenancedTriple> out;
  for (const auto& row : run_select(sparql::select_sp(entity, predicate))) {
    if (auto pt = make_triple(&entity, &predicate, find_var(row, "o"), name())) out.push_back(*pt);
  }
  sort_and_dedup(out);
  return out;
}

std::vector<ProvenancedTriple> SparqlClient::select_so(const Term& entity, const Term& object) const {
  require_grounded(entity, "select_so");
  require_grounded(object, "select_so");
  std::vector<ProvenancedTriple> out;
  if (object.is_literal()) {
    // Literals compare by lexical form, and the stored tags must come back.
    for (const auto& row : run_select(sparql::select_as_subject(entity, endpoint_.config().candidate_cap))) {
      const Term* o = find_var(row, "o");
      if (o == nullptr || !o->is_literal() || o->value() != object.value()) continue;
      if (auto pt = make_triple(&entity, find_var(row, "p"), o, name())) out.push_back(*pt);
    }
    sort_and_dedup(out);
    return out;
  }
  for (const auto& row : run_select(sparql::select_so(entity, object))) {
    if (auto pt = make_triple(&entity, find_var(row, "p"), &object, name())) out.push_back(*pt);
  }
  sort_and_dedup(out);
  return out;
}

EntityTriples SparqlClient::select_all_capped(const Term& entity, std::size_t cap) const {
  require_grounded(entity, "select_all");
  std::vector<ProvenancedTriple> all;
  for (const auto& row : run_select(sparql::select_as_subject(entity, cap + 1))) {
    if (auto pt = make_triple(&entity, find_var(row, "p"), find_var(row, "o"), name())) {
      all.push_back(*pt);
    }
  }
  for (const auto& row : run_select(sparql::select_as_object(entity, cap + 1))) {
    if (auto pt = make_triple(find_var(row, "s"), find_var(row, "p"), &entity, name())) {
      all.push_back(*pt);
    }
  }
  return apply_cap(std::move(all), cap);
}

EntityTriples SparqlClient::select_all(const Term& entity) const {
  return select_all_capped(entity, endpoint_.config().candidate_cap);
}

bool SparqlClient::check_dereferencable(std::string_view uri) const {
  if (!is_valid_iri(uri)) throw DomainError("check_dereferencable: invalid IRI '" + std::string(uri) + "'");
  return run_ask(sparql::ask_mentions(uri));
}

std::optional<ProvenancedTriple> SparqlClient::find_equivalent(const Triple& fact) const {
  if (fact.subject.is_blank() || fact.object.is_blank()) return std::nullopt;
  if (!ask_equivalent(fact)) return std::nullopt;
  if (!fact.object.is_literal()) return ProvenancedTriple{fact, name()};
  // ASK ignores tags; fetch the stored literal so the candidate is the
  // endpoint's triple rather than the fact's spelling of it.
  const std::string want = exact_key(fact);
  for (auto& pt : select_sp(fact.subject, fact.predicate)) {
    if (exact_key(pt.triple) == want) return std::move(pt);
  }
  return ProvenancedTriple{fact, name()};
}

std::vector<PairCandidate> SparqlClient::sp_so_candidates(const Term& entity, const Term& predicate,
                                                          const Term& object) const {
  std::vector<ProvenancedTriple> sp = select_sp(entity, predicate);
  std::vector<ProvenancedTriple> so;
  if (!object.is_blank()) so = select_so(entity, object);
  std::vector<ProvenancedTriple> merged = sp;
  merged.insert(merged.end(), so.begin(), so.end());
  sort_and_dedup(merged);

  std::set<std::string> sp_keys;
  std::set<std::string> so_keys;
  for (const auto& pt : sp) sp_keys.insert(exact_key(pt.triple));
  for (const auto& pt : so) so_keys.insert(exact_key(pt.triple));
  std::vector<PairCandidate> out;
  for (auto& pt : merged) {
    const std::string key = exact_key(pt.triple);
    out.push_back({std::move(pt), sp_keys.contains(key), so_keys.contains(key)});
  }
  return out;
}

EntityTriples SparqlClient::triples_of_entity(const Term& entity, std::size_t cap) const {
  return select_all_capped(entity, std::min(cap, endpoint_.config().candidate_cap));
}

FactServiceClient::FactServiceClient(EndpointConfig config) : endpoint_(std::move(config)) {
  if (endpoint_.config().kind != EndpointKind::kFactService) {
    throw ConfigError("FactServiceClient requires a fact-service endpoint");
  }
}

EntityTriples FactServiceClient::fetch(const Term& entity, std::size_t cap) const {
  require_grounded(entity, "allFacts");
  if (!entity.is_iri()) throw DomainError("allFacts: entity must be an IRI");
  const std::string suffix = "/allFacts?uri=" + text_util::percent_encode(entity.value());
  logger()->debug("{} request: allFacts uri={}", name(), entity.value());
  const std::string body = endpoint_.get(suffix, "application/json");
  std::vector<ProvenancedTriple> all;
  try {
    const auto doc = json::parse(body);
    if (!doc.is_array()) throw ProtocolError(name() + ": allFacts response is not an array");
    for (const auto& rec : doc) {
      const std::string s = rec.at("s").get<std::string>();
      const std::string p = rec.at("p").get<std::string>();
      const std::string o = rec.at("o").get<std::string>();
      std::string source = rec.contains("source") ? rec["source"].get<std::string>() : name();
      if (source.empty()) source = name();
      bool object_is_iri = is_valid_iri(o);
      if (rec.contains("o_kind")) object_is_iri = rec["o_kind"].get<std::string>() == "iri";
      try {
        Term object = object_is_iri ? Term::iri(o) : Term::literal(o);
        all.push_back({Triple(Term::iri(s), Term::iri(p), std::move(object)), std::move(source)});
      } catch (const DomainError& e) {
        logger()->debug("{}: skipping record: {}", name(), e.what());
      }
    }
  } catch (const json::exception& e) {
    throw ProtocolError(name() + ": malformed allFacts response: " + e.what());
  }
  return apply_cap(std::move(all), cap);
}

EntityTriples FactServiceClient::select_all(const Term& entity) const {
  return fetch(entity, endpoint_.config().candidate_cap);
}

std::optional<ProvenancedTriple> FactServiceClient::find_equivalent(const Triple& fact) const {
  if (!fact.subject.is_iri() || fact.object.is_blank()) return std::nullopt;
  const std::string want = exact_key(fact);
  for (auto& pt : select_all(fact.subject).triples) {
    if (exact_key(pt.triple) == want) return std::move(pt);
  }
  return std::nullopt;
}

std::vector<PairCandidate> FactServiceClient::sp_so_candidates(const Term& entity,
                                                               const Term& predicate,
                                                               const Term& object) const {
  std::vector<PairCandidate> out;
  const std::string object_key = sparql::term(object);
  std::set<std::string> seen;
  for (auto& pt : select_all(entity).triples) {
    if (pt.triple.subject != entity) continue;
    const bool sp = pt.triple.predicate == predicate;
    const bool so = !object.is_blank() && sparql::term(pt.triple.object) == object_key;
    if (!sp && !so) continue;
    if (!seen.insert(exact_key(pt.triple)).second) continue;
    out.push_back({std::move(pt), sp, so});
  }
  return out;
}

EntityTriples FactServiceClient::triples_of_entity(const Term& entity, std::size_t cap) const {
  return fetch(entity, std::min(cap, endpoint_.config().candidate_cap));
}

std::unique_ptr<Backend> make_remote_backend(const EndpointConfig& config) {
  if (config.kind == EndpointKind::kSparql) return std::make_unique<SparqlClient>(config);
  return std::make_unique<FactServiceClient>(config);
}

}  // namespace factcheck
