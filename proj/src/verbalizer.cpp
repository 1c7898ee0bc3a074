#include "factcheck/verbalizer.hpp"

#include <optional>

#include "factcheck/kg_store.hpp"
#include "text_util.hpp"

namespace factcheck {

namespace {

std::string_view local_name(std::string_view iri) {
  while (!iri.empty() && (iri.back() == '/' || iri.back() == '#')) iri.remove_suffix(1);
  auto cut = iri.find_last_of("/#");
  if (cut == std::string_view::npos) cut = iri.find_last_of(':');
  return cut == std::string_view::npos ? iri : iri.substr(cut + 1);
}

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

std::string split_words(std::string_view local) {
  std::string out;
  out.reserve(local.size() + 4);
  for (std::size_t i = 0; i < local.size(); ++i) {
    const char c = local[i];
    if (c == '_') {
      out += ' ';
      continue;
    }
    if (i > 0 && is_upper(c) && is_lower(local[i - 1])) out += ' ';
    out += c;
  }
  return out;
}

// Returns the rendering and, when a label replaced an opaque id, the label.
std::pair<std::string, std::optional<std::string>> render(const Term& term,
                                                          const KnowledgeGraph* labels,
                                                          const VerbalizerOptions& options) {
  switch (term.kind()) {
    case TermKind::kLiteral: {
      std::string_view v = term.value();
      if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
      return {std::string(v), std::nullopt};
    }
    case TermKind::kBlank:
      return {split_words(term.value()), std::nullopt};
    case TermKind::kIri:
      break;
  }
  const std::string local = text_util::percent_decode(local_name(term.value()));
  if (labels != nullptr && std::regex_match(local, options.opaque_id)) {
    const auto found = labels->labels(term.value());
    if (!found.empty()) return {found.front(), found.front()};
  }
  return {split_words(local), std::nullopt};
}

}  // namespace

std::string convert_term(const Term& term, const KnowledgeGraph* labels,
                         const VerbalizerOptions& options) {
  return render(term, labels, options).first;
}

VerbalizedTriple convert_triple(const Triple& triple, const KnowledgeGraph* labels,
                                const VerbalizerOptions& options) {
  VerbalizedTriple out{triple, {}, {}};
  std::string joined;
  for (const Term* term : {&triple.subject, &triple.predicate, &triple.object}) {
    auto [text, label] = render(*term, labels, options);
    if (label) out.substitutions.push_back({*term, std::move(*label)});
    joined += text;
    joined += ' ';
  }
  out.sentence = text_util::collapse_whitespace(joined);
  return out;
}

}  // namespace factcheck
