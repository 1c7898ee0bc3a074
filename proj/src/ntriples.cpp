#include "factcheck/ntriples.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "factcheck/error.hpp"
#include "text_util.hpp"

namespace factcheck {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Reads statements term by term. Errors surface as DomainError.
class StatementReader {
 public:
  StatementReader(std::string_view text, const PrefixMap& prefixes)
      : text_(text), prefixes_(prefixes) {}

  // Parses `term term term [.] [# comment]` covering the whole input.
  Triple read_statement() {
    std::optional<Term> terms[3];
    for (int i = 0; i < 3; ++i) {
      skip_space();
      if (at_end() || peek() == '#') {
        throw DomainError("expected 3 terms, found " + std::to_string(i));
      }
      terms[i] = read_term(/*last_term=*/i == 2, /*predicate=*/i == 1);
    }
    skip_space();
    if (!at_end() && peek() == '.') {
      ++pos_;
      skip_space();
    }
    if (!at_end() && peek() != '#') {
      throw DomainError("unexpected trailing content '" + std::string(text_.substr(pos_)) + "'");
    }
    return Triple(std::move(*terms[0]), std::move(*terms[1]), std::move(*terms[2]));
  }

  Term read_single_term() {
    skip_space();
    if (at_end()) throw DomainError("empty term");
    Term t = read_term(/*last_term=*/true, /*predicate=*/false);
    skip_space();
    if (!at_end()) throw DomainError("unexpected trailing content after term");
    return t;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  Term read_term(bool last_term, bool predicate) {
    const char c = peek();
    if (c == '<') return Term::iri(read_iriref());
    if (c == '"') return read_literal(last_term);
    if (c == '_' && pos_ + 1 < text_.size() && text_[pos_ + 1] == ':') {
      pos_ += 2;
      std::string label(read_bare(last_term));
      return Term::blank(std::move(label));
    }
    std::string_view bare = read_bare(last_term);
    if (predicate && bare == "a") return Term::iri(std::string(vocab::kRdfType));
    return Term::iri(expand_prefixed(bare));
  }

  // A whitespace-delimited token. For the final term a trailing '.' is the
  // statement terminator, not part of the name.
  std::string_view read_bare(bool last_term) {
    const std::size_t start = pos_;
    while (!at_end() && !std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    std::string_view token = text_.substr(start, pos_ - start);
    if (last_term && token.size() > 1 && token.back() == '.') {
      token.remove_suffix(1);
      --pos_;
    }
    return token;
  }

  std::string expand_prefixed(std::string_view token) {
    const auto colon = token.find(':');
    if (colon == std::string_view::npos) {
      throw DomainError("'" + std::string(token) + "' is not an RDF term");
    }
    auto expanded = prefixes_.expand(token.substr(0, colon), token.substr(colon + 1));
    if (!expanded) {
      throw DomainError("unknown prefix '" + std::string(token.substr(0, colon)) + "'");
    }
    return std::move(*expanded);
  }

  std::string read_iriref() {
    ++pos_;  // '<'
    std::string out;
    while (true) {
      if (at_end()) throw DomainError("unterminated IRI");
      const char c = text_[pos_++];
      if (c == '>') break;
      if (c == '\\') {
        read_unicode_escape(out);
        continue;
      }
      out += c;
    }
    return out;
  }

  void read_unicode_escape(std::string& out) {
    if (at_end()) throw DomainError("dangling escape");
    const char kind = text_[pos_++];
    std::size_t digits = 0;
    if (kind == 'u') digits = 4;
    if (kind == 'U') digits = 8;
    if (digits == 0) throw DomainError(std::string("invalid escape \\") + kind);
    if (pos_ + digits > text_.size()) throw DomainError("truncated unicode escape");
    std::uint32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      const int v = hex_digit(text_[pos_ + i]);
      if (v < 0) throw DomainError("invalid hex digit in unicode escape");
      cp = cp * 16 + static_cast<std::uint32_t>(v);
    }
    if (cp > 0x10FFFF) throw DomainError("unicode escape out of range");
    pos_ += digits;
    text_util::append_utf8(out, cp);
  }

  Term read_literal(bool last_term) {
    ++pos_;  // opening quote
    std::string lexical;
    while (true) {
      if (at_end()) throw DomainError("unterminated literal");
      const char c = text_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        lexical += c;
        continue;
      }
      if (at_end()) throw DomainError("dangling escape");
      const char e = peek();
      switch (e) {
        case 't': lexical += '\t'; ++pos_; break;
        case 'b': lexical += '\b'; ++pos_; break;
        case 'n': lexical += '\n'; ++pos_; break;
        case 'r': lexical += '\r'; ++pos_; break;
        case 'f': lexical += '\f'; ++pos_; break;
        case '"': lexical += '"'; ++pos_; break;
        case '\'': lexical += '\''; ++pos_; break;
        case '\\': lexical += '\\'; ++pos_; break;
        default: read_unicode_escape(lexical);
      }
    }
    if (!at_end() && peek() == '@') {
      ++pos_;
      std::string_view tag = read_bare(last_term);
      return Term::literal(std::move(lexical), std::nullopt, std::string(tag));
    }
    if (pos_ + 1 < text_.size() && peek() == '^' && text_[pos_ + 1] == '^') {
      pos_ += 2;
      if (at_end()) throw DomainError("missing datatype");
      std::string datatype =
          peek() == '<' ? read_iriref() : expand_prefixed(read_bare(last_term));
      return Term::literal(std::move(lexical), std::move(datatype));
    }
    return Term::literal(std::move(lexical));
  }

  std::string_view text_;
  const PrefixMap& prefixes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::size_t ParseReport::skipped_count() const {
  return static_cast<std::size_t>(std::count_if(diagnostics.begin(), diagnostics.end(),
                                                [](const Diagnostic& d) {
                                                  return d.severity == Severity::kSkipped;
                                                }));
}

ParseReport parse_triples(std::string_view text, const PrefixMap& prefixes) {
  ParseReport report;
  std::size_t line_no = 0;
  for (std::string_view raw : text_util::split_lines(text)) {
    ++line_no;
    ++report.total_lines;
    const std::string_view line = text_util::trim(raw);
    if (line.empty() || line.front() == '#') {
      ++report.blank_or_comment_lines;
      continue;
    }
    try {
      Triple t = StatementReader(line, prefixes).read_statement();
      if (t.subject.is_blank()) {
        report.diagnostics.push_back(
            {line_no, Severity::kWarning, "blank-node subject; no entity anchor for validation"});
      }
      report.triples.push_back(std::move(t));
      report.triple_lines.push_back(line_no);
    } catch (const DomainError& e) {
      report.diagnostics.push_back({line_no, Severity::kSkipped, e.what()});
    }
  }
  return report;
}

Triple parse_single_triple(std::string_view statement, const PrefixMap& prefixes) {
  const std::string_view trimmed = text_util::trim(statement);
  if (trimmed.empty()) throw DomainError("empty statement");
  return StatementReader(trimmed, prefixes).read_statement();
}

Term parse_term(std::string_view token, const PrefixMap& prefixes) {
  return StatementReader(token, prefixes).read_single_term();
}

}  // namespace factcheck
