#include "factcheck/validator.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "factcheck/kg_store.hpp"

namespace factcheck {

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::kA: return "A";
    case Rule::kB: return "B";
    case Rule::kC: return "C";
  }
  return "?";
}

std::string_view to_string(PairKind kind) {
  switch (kind) {
    case PairKind::kNone: return "none";
    case PairKind::kSamePredicate: return "same-predicate";
    case PairKind::kSameObject: return "same-object";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
auto with_phase(const char* phase, F&& f) {
  try {
    return f();
  } catch (const TransportError& e) {
    throw TransportError(std::string("candidate retrieval (") + phase + "): " + e.what());
  } catch (const ProtocolError& e) {
    throw ProtocolError(std::string("candidate retrieval (") + phase + "): " + e.what());
  }
}

struct Scored {
  std::size_t index;
  double score;
};

// Top-k candidate indices under (score desc, serialization asc, source asc).
std::vector<Scored> rank_indices(const std::vector<double>& scores,
                                 const std::vector<ProvenancedTriple>& candidates, std::size_t k) {
  std::vector<std::string> keys(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) keys[i] = serialize_triple(candidates[i].triple);
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  auto better = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    if (keys[a] != keys[b]) return keys[a] < keys[b];
    return candidates[a].source < candidates[b].source;
  };
  const std::size_t n = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(), better);
  std::vector<Scored> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back({order[i], scores[order[i]]});
  return out;
}

struct RankOutput {
  std::string fact_sentence;
  std::vector<Scored> top;
  std::vector<std::string> sentences;  // candidates
  std::chrono::nanoseconds encoding{0};
  std::chrono::nanoseconds ranking{0};
};

RankOutput rank_impl(const Triple& fact, const CandidateSet& cands, const EncoderHandle& encoder,
                     std::size_t k, const ValidateOptions& options) {
  if (k == 0) throw DomainError("rank: k must be >= 1");
  RankOutput out;
  const auto t0 = Clock::now();
  std::vector<std::string> texts;
  texts.reserve(cands.candidates.size() + 1);
  texts.push_back(convert_triple(fact, options.labels, options.verbalizer).sentence);
  for (const auto& c : cands.candidates) {
    texts.push_back(convert_triple(c.triple, options.labels, options.verbalizer).sentence);
  }
  out.fact_sentence = texts.front();
  if (cands.candidates.empty()) return out;

  const auto embeddings = encoder.encode(texts);
  const auto t1 = Clock::now();
  std::vector<double> scores(cands.candidates.size());
  for (std::size_t i = 0; i < scores.size(); ++i) scores[i] = cosine(embeddings[0], embeddings[i + 1]);
  out.top = rank_indices(scores, cands.candidates, k);
  out.sentences.assign(std::make_move_iterator(texts.begin() + 1), std::make_move_iterator(texts.end()));
  const auto t2 = Clock::now();
  out.encoding = t1 - t0;
  out.ranking = t2 - t1;
  return out;
}

}  // namespace

CandidateSet find_candidates(const Triple& fact, const Backend& backend, std::size_t candidate_cap) {
  if (fact.subject.is_blank()) throw BlankSubjectError();
  CandidateSet set;

  if (auto same = with_phase("rule A", [&] { return backend.find_equivalent(fact); })) {
    set.rule = Rule::kA;
    set.candidates.push_back(std::move(*same));
    return set;
  }

  auto pairs = with_phase("rule B", [&] {
    return backend.sp_so_candidates(fact.subject, fact.predicate, fact.object);
  });
  if (!pairs.empty()) {
    set.rule = Rule::kB;
    for (auto& p : pairs) {
      set.candidates.push_back(std::move(p.fact));
      set.same_predicate.push_back(p.same_predicate);
    }
    return set;
  }

  auto all = with_phase("rule C", [&] { return backend.triples_of_entity(fact.subject, candidate_cap); });
  set.rule = Rule::kC;
  set.candidates = std::move(all.triples);
  set.truncated = all.truncated;
  return set;
}

std::vector<RankedMatch> rank(const Triple& fact, const CandidateSet& candidates,
                              const EncoderHandle& encoder, std::size_t k,
                              const ValidateOptions& options) {
  RankOutput ranked = rank_impl(fact, candidates, encoder, k, options);
  std::vector<RankedMatch> out;
  out.reserve(ranked.top.size());
  for (const Scored& s : ranked.top) {
    out.push_back({candidates.candidates[s.index], s.score, ranked.sentences[s.index]});
  }
  return out;
}

ValidationResult validate(const Triple& fact, const Backend& backend, const EncoderHandle& encoder,
                          const ValidateOptions& options) {
  if (options.k == 0) throw DomainError("validate: k must be >= 1");
  const auto t0 = Clock::now();
  CandidateSet cands = find_candidates(fact, backend, options.candidate_cap);
  const auto t1 = Clock::now();
  RankOutput ranked = rank_impl(fact, cands, encoder, options.k, options);

  ValidationResult result{fact, std::move(ranked.fact_sentence), cands.rule};
  result.candidate_count = cands.candidates.size();
  result.truncated = cands.truncated;
  result.backend_name = backend.name();
  result.timings.candidate_retrieval = t1 - t0;
  result.timings.encoding = ranked.encoding;
  result.timings.ranking = ranked.ranking;
  for (const Scored& s : ranked.top) {
    result.matches.push_back(
        {std::move(cands.candidates[s.index]), s.score, std::move(ranked.sentences[s.index])});
  }
  if (cands.rule == Rule::kB && !ranked.top.empty()) {
    result.pair = cands.same_predicate[ranked.top.front().index] ? PairKind::kSamePredicate
                                                                 : PairKind::kSameObject;
  }
  return result;
}

std::vector<BatchItem> validate_batch(std::span<const Triple> facts, const Backend& backend,
                                      const EncoderHandle& encoder, const ValidateOptions& options,
                                      std::size_t parallelism) {
  if (parallelism == 0) throw DomainError("validate_batch: parallelism must be >= 1");
  std::vector<BatchItem> out(facts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < facts.size(); i = next++) {
      try {
        out[i].result = validate(facts[i], backend, encoder, options);
      } catch (const std::exception& e) {
        out[i].error = e.what();
      }
    }
  };
  const std::size_t threads = std::min(parallelism, facts.size());
  if (threads <= 1) {
    worker();
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();  // joins
  return out;
}

}  // namespace factcheck
