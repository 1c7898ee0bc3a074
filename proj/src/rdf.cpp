#include "factcheck/rdf.hpp"

#include <cctype>

#include "factcheck/error.hpp"
#include "text_util.hpp"

namespace factcheck {

namespace {

bool is_iri_forbidden(unsigned char c) {
  if (c <= 0x20) return true;
  switch (c) {
    case '<':
    case '>':
    case '"':
    case '{':
    case '}':
    case '|':
    case '^':
    case '`':
    case '\\':
      return true;
    default:
      return false;
  }
}

bool is_valid_language(std::string_view tag) {
  if (tag.empty()) return false;
  bool first_subtag = true;
  std::size_t len = 0;
  for (char c : tag) {
    if (c == '-') {
      if (len == 0) return false;
      first_subtag = false;
      len = 0;
      continue;
    }
    const auto uc = static_cast<unsigned char>(c);
    if (first_subtag ? !std::isalpha(uc) : !std::isalnum(uc)) return false;
    ++len;
  }
  return len > 0;
}

bool is_valid_blank_label(std::string_view label) {
  if (label.empty() || label.front() == '.' || label.front() == '-' || label.back() == '.') {
    return false;
  }
  for (char c : label) {
    const auto uc = static_cast<unsigned char>(c);
    if (!std::isalnum(uc) && c != '_' && c != '-' && c != '.') return false;
  }
  return true;
}

// Locals that re-parse unambiguously as the tail of a `pfx:local` token.
bool is_safe_local(std::string_view local) {
  if (local.empty() || local.back() == '.') return false;
  for (char c : local) {
    const auto uc = static_cast<unsigned char>(c);
    if (uc <= 0x20 || c == '<' || c == '>' || c == '"' || c == '\\') return false;
  }
  return true;
}

void append_escaped_literal(std::string& out, std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: {
        const auto uc = static_cast<unsigned char>(c);
        if (uc < 0x20 || uc == 0x7f) {
          out += "\\u00";
          out += kHex[uc >> 4];
          out += kHex[uc & 0xF];
        } else {
          out += c;
        }
      }
    }
  }
}

void append_iri(std::string& out, std::string_view iri, const PrefixMap* prefixes) {
  if (prefixes != nullptr) {
    if (auto compacted = prefixes->compact(iri)) {
      out += compacted->first;
      out += ':';
      out += compacted->second;
      return;
    }
  }
  out += '<';
  out += iri;
  out += '>';
}

}  // namespace

bool is_valid_iri(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  for (char c : s) {
    if (is_iri_forbidden(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Term Term::iri(std::string value) {
  if (!is_valid_iri(value)) throw DomainError("invalid IRI: '" + value + "'");
  return Term(TermKind::kIri, std::move(value), std::nullopt, std::nullopt);
}

Term Term::literal(std::string lexical, std::optional<std::string> datatype,
                   std::optional<std::string> language) {
  if (datatype && language) {
    throw DomainError("literal cannot carry both a datatype and a language tag");
  }
  if (datatype && !is_valid_iri(*datatype)) {
    throw DomainError("invalid datatype IRI: '" + *datatype + "'");
  }
  if (language && !is_valid_language(*language)) {
    throw DomainError("invalid language tag: '" + *language + "'");
  }
  return Term(TermKind::kLiteral, std::move(lexical), std::move(datatype), std::move(language));
}

Term Term::blank(std::string label) {
  if (!is_valid_blank_label(label)) throw DomainError("invalid blank node label: '" + label + "'");
  return Term(TermKind::kBlank, std::move(label), std::nullopt, std::nullopt);
}

Triple::Triple(Term s, Term p, Term o)
    : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
  if (subject.is_literal()) throw DomainError("triple subject cannot be a literal");
  if (!predicate.is_iri()) throw DomainError("triple predicate must be an IRI");
}

PrefixMap PrefixMap::defaults() {
  PrefixMap m;
  m.bind("dbr", "http://dbpedia.org/resource/");
  m.bind("dbo", "http://dbpedia.org/ontology/");
  m.bind("dbp", "http://dbpedia.org/property/");
  m.bind("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#");
  m.bind("rdfs", "http://www.w3.org/2000/01/rdf-schema#");
  m.bind("owl", "http://www.w3.org/2002/07/owl#");
  m.bind("foaf", "http://xmlns.com/foaf/0.1/");
  m.bind("yago", "http://yago-knowledge.org/resource/");
  m.bind("wkd", "http://www.wikidata.org/entity/");
  m.bind("wkp", "http://www.wikidata.org/prop/direct/");
  m.bind("xsd", "http://www.w3.org/2001/XMLSchema#");
  return m;
}

void PrefixMap::merge_config(std::string_view text) {
  std::size_t line_no = 0;
  for (std::string_view line : text_util::split_lines(text)) {
    ++line_no;
    line = text_util::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("prefix config line " + std::to_string(line_no) +
                        ": expected label=namespace");
    }
    bind(std::string(text_util::trim(line.substr(0, eq))),
         std::string(text_util::trim(line.substr(eq + 1))));
  }
}

void PrefixMap::bind(std::string label, std::string ns) {
  if (label.empty()) throw ConfigError("empty prefix label");
  for (char c : label) {
    const auto uc = static_cast<unsigned char>(c);
    if (!std::isalnum(uc) && c != '_' && c != '-') {
      throw ConfigError("invalid prefix label '" + label + "'");
    }
  }
  if (!is_valid_iri(ns)) throw ConfigError("prefix '" + label + "' has invalid namespace '" + ns + "'");
  entries_.insert_or_assign(std::move(label), std::move(ns));
}

std::optional<std::string> PrefixMap::expand(std::string_view label, std::string_view local) const {
  auto it = entries_.find(label);
  if (it == entries_.end()) return std::nullopt;
  std::string out = it->second;
  out += local;
  return out;
}

std::optional<std::pair<std::string, std::string>> PrefixMap::compact(std::string_view iri) const {
  const std::pair<const std::string, std::string>* best = nullptr;
  for (const auto& entry : entries_) {
    const std::string& ns = entry.second;
    if (iri.size() <= ns.size() || iri.substr(0, ns.size()) != ns) continue;
    if (!is_safe_local(iri.substr(ns.size()))) continue;
    if (best == nullptr || ns.size() > best->second.size()) best = &entry;
  }
  if (best == nullptr) return std::nullopt;
  return std::make_pair(best->first, std::string(iri.substr(best->second.size())));
}

std::string serialize_term(const Term& t, const PrefixMap* prefixes) {
  std::string out;
  switch (t.kind()) {
    case TermKind::kIri:
      append_iri(out, t.value(), prefixes);
      break;
    case TermKind::kBlank:
      out += "_:";
      out += t.value();
      break;
    case TermKind::kLiteral:
      out += '"';
      append_escaped_literal(out, t.value());
      out += '"';
      if (t.datatype()) {
        out += "^^";
        append_iri(out, *t.datatype(), prefixes);
      } else if (t.language()) {
        out += '@';
        out += *t.language();
      }
      break;
  }
  return out;
}

std::string serialize_triple(const Triple& t, const PrefixMap* prefixes) {
  std::string out = serialize_term(t.subject, prefixes);
  out += ' ';
  out += serialize_term(t.predicate, prefixes);
  out += ' ';
  out += serialize_term(t.object, prefixes);
  out += " .";
  return out;
}

bool canonical_less(const Triple& a, const Triple& b) {
  return serialize_triple(a) < serialize_triple(b);
}

}  // namespace factcheck
