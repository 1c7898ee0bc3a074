#include "factcheck/report.hpp"

#include <cstdio>

namespace factcheck {

double to_ms(std::chrono::nanoseconds ns) {
  return std::chrono::duration<double, std::milli>(ns).count();
}

nlohmann::ordered_json result_json(const ValidationResult& result, bool include_timings) {
  nlohmann::ordered_json out;
  out["fact"] = serialize_triple(result.fact);
  out["sentence"] = result.fact_sentence;
  out["rule"] = to_string(result.rule);
  out["pair"] = to_string(result.pair);
  out["backend"] = result.backend_name;
  out["candidates"] = result.candidate_count;
  out["truncated"] = result.truncated;
  auto matches = nlohmann::ordered_json::array();
  for (const auto& m : result.matches) {
    matches.push_back({{"triple", serialize_triple(m.triple.triple)},
                       {"source", m.triple.source},
                       {"score", m.score},
                       {"sentence", m.sentence}});
  }
  out["matches"] = std::move(matches);
  if (include_timings) {
    out["timings_ms"] = {{"candidate_retrieval", to_ms(result.timings.candidate_retrieval)},
                         {"encoding", to_ms(result.timings.encoding)},
                         {"ranking", to_ms(result.timings.ranking)}};
  }
  return out;
}

std::string result_text(const ValidationResult& result, const PrefixMap* prefixes,
                        bool include_timings) {
  std::string out = "fact: " + serialize_triple(result.fact, prefixes) + "\n";
  out += "  sentence: " + result.fact_sentence + "\n";
  out += "  rule: " + std::string(to_string(result.rule));
  if (result.pair != PairKind::kNone) out += " (" + std::string(to_string(result.pair)) + ")";
  out += ", candidates: " + std::to_string(result.candidate_count);
  if (result.truncated) out += " (truncated)";
  out += ", backend: " + result.backend_name + "\n";
  if (result.matches.empty()) out += "  no matches\n";
  for (std::size_t i = 0; i < result.matches.size(); ++i) {
    const auto& m = result.matches[i];
    char score[32];
    std::snprintf(score, sizeof score, "%.6f", m.score);
    out += "  " + std::to_string(i + 1) + ". " + score + "  [" + m.triple.source + "]  " +
           serialize_triple(m.triple.triple, prefixes) + "\n";
    out += "     \"" + m.sentence + "\"\n";
  }
  if (include_timings) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "  timings: retrieval %.3f ms, encoding %.3f ms, ranking %.3f ms\n",
                  to_ms(result.timings.candidate_retrieval), to_ms(result.timings.encoding),
                  to_ms(result.timings.ranking));
    out += buf;
  }
  return out;
}

}  // namespace factcheck
