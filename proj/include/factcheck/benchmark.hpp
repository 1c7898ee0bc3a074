#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "factcheck/backend.hpp"
#include "factcheck/encoder.hpp"
#include "factcheck/rdf.hpp"
#include "factcheck/validator.hpp"

namespace factcheck {

enum class Gold { kCorrect, kErroneous };
enum class Part { kPersons, kPlaces, kEvents, kOther };
enum class OutcomeClass { kC1, kC2, kC3, kC4 };

inline constexpr std::array<Part, 4> kAllParts{Part::kPersons, Part::kPlaces, Part::kEvents,
                                               Part::kOther};

std::string_view to_string(Gold gold);
std::string_view to_string(Part part);
std::string_view to_string(OutcomeClass c);
std::optional<Gold> parse_gold(std::string_view s);
std::optional<Part> parse_part(std::string_view s);

struct BenchmarkRecord {
  Triple fact;
  Gold gold = Gold::kCorrect;
  std::string entity;
  Part part = Part::kOther;
};

// JSON-Lines, one record per non-blank line. `s`, `p`, `o` are IRIs or
// prefixed names (expanded with `prefixes`); `o_kind` decides whether `o` is
// an IRI or a literal. Throws BenchmarkFormatError naming the line.
std::vector<BenchmarkRecord> parse_benchmark(std::string_view text, const PrefixMap& prefixes);
std::vector<BenchmarkRecord> load_benchmark(const std::filesystem::path& path,
                                            const PrefixMap& prefixes);
std::string benchmark_line(const BenchmarkRecord& record);

inline constexpr double kDefaultTau = 0.9;
inline constexpr double kContradictionWindow = 0.01;

// True when the best match is contradicted: another top-K match has the same
// subject and predicate, a different object, comes from a different source
// and scores within kContradictionWindow of the best.
bool has_contradiction(const ValidationResult& result);

// Rule A always validates. Otherwise some match must score >= tau and the
// best match must not be contradicted.
bool is_validated(const ValidationResult& result, double tau);

OutcomeClass classify(const ValidationResult& result, Gold gold, double tau = kDefaultTau);

struct ClassCounts {
  std::array<std::size_t, 4> by_class{};
  std::size_t errored = 0;

  std::size_t& operator[](OutcomeClass c) { return by_class[static_cast<std::size_t>(c)]; }
  std::size_t operator[](OutcomeClass c) const { return by_class[static_cast<std::size_t>(c)]; }
  std::size_t classified() const;
  std::size_t gold_correct() const;    // C1 + C2
  std::size_t gold_erroneous() const;  // C3 + C4
  // Share of the gold group (C1/C2 over correct, C3/C4 over erroneous), in
  // percent; 0 when the group is empty.
  double percent(OutcomeClass c) const;
};

// Rows of the rule-usage matrix.
enum class RuleRow { kA, kBSamePredicate, kBSameObject, kC };
inline constexpr std::size_t kRuleRows = 4;
std::string_view to_string(RuleRow row);
RuleRow rule_row(const ValidationResult& result);

inline constexpr double kHistogramBinWidth = 0.05;
inline constexpr std::size_t kHistogramBins = 40;
std::size_t histogram_bin(double score);
double histogram_bin_start(std::size_t bin);

struct EvaluationConfig {
  ValidateOptions validate;
  double tau = kDefaultTau;
  std::size_t parallelism = 1;
  std::string backend;  // echoed in the report
  std::string encoder;
};

struct RecordOutcome {
  std::optional<ValidationResult> result;
  std::string error;
  std::optional<OutcomeClass> outcome;
};

struct TimingSummary {
  std::size_t count = 0;
  std::chrono::nanoseconds total{0};
  double mean_ms() const;
};

struct EvaluationReport {
  std::size_t k = 0;
  double tau = kDefaultTau;
  std::string backend;
  std::string encoder;

  ClassCounts overall;
  std::array<ClassCounts, 4> per_part{};  // indexed by Part
  std::array<std::array<std::size_t, 4>, kRuleRows> rule_matrix{};
  std::array<std::array<std::size_t, 4>, kHistogramBins> histogram{};
  std::array<TimingSummary, 3> timing_by_rule{};  // indexed by Rule
  std::array<TimingSummary, 4> timing_by_part{};
  std::vector<BenchmarkRecord> records;
  std::vector<RecordOutcome> outcomes;  // parallel to records
};

EvaluationReport evaluate(std::span<const BenchmarkRecord> records, const Backend& backend,
                          const EncoderHandle& encoder, const EvaluationConfig& config);

nlohmann::ordered_json report_json(const EvaluationReport& report, bool include_timings = false);
std::string report_tables(const EvaluationReport& report, bool include_timings = false);
// Annotation worksheet with an empty human_class column.
std::string worksheet_csv(const EvaluationReport& report);
std::string histogram_csv(const EvaluationReport& report);

// Answers "does the reference KG know this URI?". May throw Transport or
// Protocol errors, which make dereferenceability unavailable.
using DereferenceCheck = std::function<bool(std::string_view)>;

struct PredicateRow {
  std::string predicate;
  std::size_t total = 0;
  std::size_t correct = 0;
  std::size_t erroneous = 0;
};

struct PartStats {
  std::size_t total = 0;
  std::size_t correct = 0;
  std::size_t erroneous = 0;
  std::size_t unique_uris = 0;        // IRIs in subject or object position
  std::size_t unique_properties = 0;  // IRIs in predicate position
  std::optional<std::size_t> dereferenceable_uris;
  std::optional<std::size_t> dereferenceable_properties;
  std::vector<PredicateRow> top_predicates;
};

struct BenchmarkStats {
  std::array<PartStats, 4> per_part{};  // indexed by Part
  // Counts add up the parts; unique_* of the union are kept separately.
  PartStats total;
  std::size_t union_unique_uris = 0;
  std::size_t union_unique_properties = 0;
  bool dereferenceability_available = false;
  std::string dereferenceability_note;
};

// Predicates are ordered by total desc, then correct desc, then IRI asc.
BenchmarkStats benchmark_stats(std::span<const BenchmarkRecord> records,
                               const DereferenceCheck* check = nullptr, std::size_t top_n = 10,
                               const PrefixMap* prefixes = nullptr);

nlohmann::ordered_json stats_json(const BenchmarkStats& stats);
std::string stats_tables(const BenchmarkStats& stats);

}  // namespace factcheck
