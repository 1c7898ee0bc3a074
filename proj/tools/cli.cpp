#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "factcheck/benchmark.hpp"
#include "factcheck/encoder.hpp"
#include "factcheck/error.hpp"
#include "factcheck/kg_store.hpp"
#include "factcheck/llm_gateway.hpp"
#include "factcheck/log.hpp"
#include "factcheck/ntriples.hpp"
#include "factcheck/remote.hpp"
#include "factcheck/report.hpp"
#include "factcheck/synth.hpp"
#include "factcheck/validator.hpp"

namespace factcheck::cli {

namespace {

namespace fs = std::filesystem;

struct Settings {
  std::vector<std::string> kg;
  std::string manifest;
  std::string sparql;
  std::string fact_service;
  std::string encoder = "fallback";
  std::string prefixes;
  std::size_t k = 3;
  double tau = kDefaultTau;
  std::size_t parallelism = 1;
  std::string output = "text";
  std::string out_dir;
  std::string fixtures;
  std::string llm = "replay";
  std::string config;
  bool timings = false;
  bool verbose = false;

  // Config-file only.
  std::string opaque_id_regex = kDefaultOpaqueIdPattern;
  std::size_t candidate_cap = kDefaultCandidateCap;
  std::string llm_base_url = "https://api.openai.com/v1";
  std::string llm_model = "gpt-3.5-turbo";
  std::string llm_api_key_env = "OPENAI_API_KEY";
  double remote_timeout_seconds = 30.0;
  double remote_rate = 4.0;
  int remote_retries = 2;
  double encoder_timeout_seconds = 30.0;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' expects a number, got '" + v + "'");
  }
}

// `key = value` lines; values given on the command line win, so this only
// fills settings whose flag was not used.
void apply_config_file(Settings& s, const std::string& path, const CLI::App& app) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  auto flag_given = [&app](const std::string& name) {
    const CLI::Option* opt = app.get_option_no_throw("--" + name);
    return opt != nullptr && opt->count() > 0;
  };
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "opaque_id_regex") s.opaque_id_regex = value;
    else if (key == "candidate_cap") s.candidate_cap = static_cast<std::size_t>(to_double(key, value));
    else if (key == "llm_base_url") s.llm_base_url = value;
    else if (key == "llm_model") s.llm_model = value;
    else if (key == "llm_api_key_env") s.llm_api_key_env = value;
    else if (key == "remote_timeout_seconds") s.remote_timeout_seconds = to_double(key, value);
    else if (key == "remote_rate") s.remote_rate = to_double(key, value);
    else if (key == "remote_retries") s.remote_retries = static_cast<int>(to_double(key, value));
    else if (key == "encoder_timeout_seconds") s.encoder_timeout_seconds = to_double(key, value);
    else if (key == "kg") { if (!flag_given("kg")) s.kg.push_back(value); }
    else if (key == "manifest") { if (!flag_given("manifest")) s.manifest = value; }
    else if (key == "sparql") { if (!flag_given("sparql")) s.sparql = value; }
    else if (key == "fact_service") { if (!flag_given("fact-service")) s.fact_service = value; }
    else if (key == "encoder") { if (!flag_given("encoder")) s.encoder = value; }
    else if (key == "prefixes") { if (!flag_given("prefixes")) s.prefixes = value; }
    else if (key == "k") { if (!flag_given("k")) s.k = static_cast<std::size_t>(to_double(key, value)); }
    else if (key == "tau") { if (!flag_given("tau")) s.tau = to_double(key, value); }
    else if (key == "parallelism") { if (!flag_given("parallelism")) s.parallelism = static_cast<std::size_t>(to_double(key, value)); }
    else if (key == "fixtures") { if (!flag_given("fixtures")) s.fixtures = value; }
    else if (key == "llm") { if (!flag_given("llm")) s.llm = value; }
    else throw ConfigError(path + ":" + std::to_string(number) + ": unknown key '" + key + "'");
  }
}

void add_common(CLI::App* cmd, Settings& s) {
  cmd->add_option("--config", s.config, "key = value settings file");
  cmd->add_option("--prefixes", s.prefixes, "extra prefix bindings (prefix = namespace lines)");
  cmd->add_option("--output", s.output, "json or text")->check(CLI::IsMember({"json", "text"}));
  cmd->add_flag("--timings", s.timings, "include timings in the output");
  cmd->add_flag("-v,--verbose", s.verbose, "debug logging on stderr");
}

void add_backend(CLI::App* cmd, Settings& s) {
  cmd->add_option("--kg", s.kg, "N-Triples file, optionally name=path (repeatable)");
  cmd->add_option("--manifest", s.manifest, "file of name=path lines");
  cmd->add_option("--sparql", s.sparql, "SPARQL endpoint URL");
  cmd->add_option("--fact-service", s.fact_service, "fact service base URL");
}

void add_validation(CLI::App* cmd, Settings& s) {
  add_backend(cmd, s);
  cmd->add_option("--encoder", s.encoder, "fallback, or sidecar address host:port / unix:/path");
  cmd->add_option("--k", s.k, "matches to return");
  cmd->add_option("--tau", s.tau, "validation threshold in [-1, 1]");
  cmd->add_option("--parallelism", s.parallelism, "worker threads");
}

PrefixMap load_prefixes(const Settings& s) {
  PrefixMap prefixes = PrefixMap::defaults();
  if (!s.prefixes.empty()) {
    try {
      prefixes.merge_config(read_file(s.prefixes));
    } catch (const DomainError& e) {
      throw ConfigError("prefix file " + s.prefixes + ": " + e.what());
    }
  }
  return prefixes;
}

void check_settings(const Settings& s) {
  if (s.k < 1) throw ConfigError("--k must be at least 1");
  if (!(s.tau >= -1.0 && s.tau <= 1.0)) throw ConfigError("--tau must lie in [-1, 1]");
  if (s.parallelism < 1) throw ConfigError("--parallelism must be at least 1");
}

struct BackendChoice {
  std::unique_ptr<Backend> backend;
  const KnowledgeGraph* local = nullptr;
  const SparqlClient* sparql = nullptr;
  std::string description;
};

std::vector<GraphFile> graph_files(const Settings& s) {
  std::vector<GraphFile> files;
  for (const std::string& spec : s.kg) {
    const auto eq = spec.find('=');
    if (eq != std::string::npos && eq > 0 && spec.find('/') > eq) {
      files.push_back({spec.substr(eq + 1), spec.substr(0, eq)});
    } else {
      files.push_back({spec, ""});
    }
  }
  if (!s.manifest.empty()) {
    const fs::path path(s.manifest);
    for (auto& f : parse_manifest(read_file(path), path.parent_path())) files.push_back(std::move(f));
  }
  return files;
}

BackendChoice make_backend(const Settings& s, const PrefixMap& prefixes, bool required = true) {
  const int chosen = (s.kg.empty() && s.manifest.empty() ? 0 : 1) + (s.sparql.empty() ? 0 : 1) +
                     (s.fact_service.empty() ? 0 : 1);
  if (chosen > 1) throw ConfigError("select exactly one backend: --kg/--manifest, --sparql or --fact-service");
  BackendChoice choice;
  if (chosen == 0) {
    if (required) throw ConfigError("no knowledge graph selected (use --kg, --manifest, --sparql or --fact-service)");
    return choice;
  }
  if (!s.sparql.empty() || !s.fact_service.empty()) {
    EndpointConfig cfg;
    cfg.kind = s.sparql.empty() ? EndpointKind::kFactService : EndpointKind::kSparql;
    cfg.base_url = s.sparql.empty() ? s.fact_service : s.sparql;
    cfg.name = cfg.base_url;
    cfg.timeout = std::chrono::milliseconds(static_cast<long>(s.remote_timeout_seconds * 1000));
    cfg.rate_limit = s.remote_rate;
    cfg.max_retries = s.remote_retries;
    cfg.candidate_cap = s.candidate_cap;
    cfg.validate();
    choice.description = (s.sparql.empty() ? "fact-service " : "sparql ") + cfg.base_url;
    if (cfg.kind == EndpointKind::kSparql) {
      auto client = std::make_unique<SparqlClient>(cfg);
      choice.sparql = client.get();
      choice.backend = std::move(client);
    } else {
      choice.backend = std::make_unique<FactServiceClient>(cfg);
    }
    return choice;
  }
  const auto files = graph_files(s);
  auto kg = std::make_unique<KnowledgeGraph>(KnowledgeGraph::load(files, prefixes));
  for (const auto& d : kg->diagnostics()) {
    if (d.diagnostic.severity == Severity::kSkipped) {
      logger()->warn("{}:{}: skipped: {}", d.source, d.diagnostic.line, d.diagnostic.message);
    }
  }
  std::string names;
  for (const auto& g : kg->source_graphs()) names += (names.empty() ? "" : ",") + g;
  choice.description = "local " + names;
  choice.local = kg.get();
  choice.backend = std::move(kg);
  return choice;
}

EncoderHandle make_encoder(const Settings& s) {
  if (s.encoder == "fallback") return make_fallback_encoder();
  try {
    return connect_sidecar(s.encoder, std::chrono::milliseconds(static_cast<long>(s.encoder_timeout_seconds * 1000)));
  } catch (const TransportError& e) {
    throw ConfigError(e.what());
  }
}

ValidateOptions validate_options(const Settings& s, const BackendChoice& b) {
  ValidateOptions opts;
  opts.k = s.k;
  opts.candidate_cap = s.candidate_cap;
  opts.labels = b.local;
  try {
    opts.verbalizer.opaque_id = std::regex(s.opaque_id_regex);
  } catch (const std::regex_error& e) {
    throw ConfigError("opaque_id_regex: " + std::string(e.what()));
  }
  return opts;
}

struct FactInput {
  std::string text;
  std::optional<Triple> triple;
  std::string error;
};

// Validates parsed inputs and prints the combined report; returns the exit code.
int report_validation(const std::vector<FactInput>& inputs, const BackendChoice& b,
                      const EncoderHandle& enc, const Settings& s, const PrefixMap& prefixes,
                      std::ostream& out, nlohmann::ordered_json* envelope) {
  std::vector<Triple> facts;
  std::vector<std::size_t> slot;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].triple) {
      facts.push_back(*inputs[i].triple);
      slot.push_back(i);
    }
  }
  const auto batch = validate_batch(facts, *b.backend, enc, validate_options(s, b), s.parallelism);
  std::vector<const BatchItem*> by_input(inputs.size(), nullptr);
  for (std::size_t j = 0; j < slot.size(); ++j) by_input[slot[j]] = &batch[j];

  int code = kExitOk;
  auto items = nlohmann::ordered_json::array();
  std::string text;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const BatchItem* item = by_input[i];
    std::string error = item ? item->error : inputs[i].error;
    if (item && item->ok()) {
      items.push_back(result_json(*item->result, s.timings));
      text += result_text(*item->result, &prefixes, s.timings) + "\n";
    } else {
      code = kExitFactError;
      items.push_back({{"input", inputs[i].text}, {"error", error}});
      text += "input: " + inputs[i].text + "\n  error: " + error + "\n\n";
    }
  }
  if (s.output == "json") {
    nlohmann::ordered_json j = envelope ? *envelope : nlohmann::ordered_json::object();
    j["backend"] = b.description;
    j["encoder"] = enc.model_name();
    j["k"] = s.k;
    j["facts"] = std::move(items);
    out << j.dump(2) << "\n";
  } else {
    out << text;
  }
  return code;
}

int cmd_validate(const Settings& s, const std::vector<std::string>& facts, const std::string& file,
                 std::ostream& out) {
  const PrefixMap prefixes = load_prefixes(s);
  std::vector<FactInput> inputs;
  for (const auto& f : facts) {
    FactInput in{f, std::nullopt, ""};
    try {
      in.triple = parse_single_triple(f, prefixes);
    } catch (const DomainError& e) {
      in.error = std::string("parse error: ") + e.what();
    }
    inputs.push_back(std::move(in));
  }
  if (!file.empty()) {
    const std::string text = read_file(file);
    const ParseReport report = parse_triples(text, prefixes);
    std::vector<FactInput> from_file;
    std::size_t t = 0;
    std::size_t d = 0;
    // Keep file order: interleave triples and skipped lines by line number.
    while (t < report.triples.size() || d < report.diagnostics.size()) {
      if (d < report.diagnostics.size() && report.diagnostics[d].severity != Severity::kSkipped) {
        ++d;
        continue;
      }
      const bool take_diag = d < report.diagnostics.size() &&
                             (t >= report.triples.size() || report.diagnostics[d].line < report.triple_lines[t]);
      if (take_diag) {
        const auto& diag = report.diagnostics[d++];
        inputs.push_back({file + ":" + std::to_string(diag.line), std::nullopt, "parse error: " + diag.message});
      } else {
        inputs.push_back({serialize_triple(report.triples[t], &prefixes), report.triples[t], ""});
        ++t;
      }
    }
  }
  if (inputs.empty()) throw ConfigError("no facts given (pass fact strings or --file)");
  const BackendChoice b = make_backend(s, prefixes);
  const EncoderHandle enc = make_encoder(s);
  return report_validation(inputs, b, enc, s, prefixes, out, nullptr);
}

int cmd_ask(const Settings& s, const std::string& payload, const std::string& shape,
            const std::string& format, std::ostream& out, std::ostream& err) {
  const PrefixMap prefixes = load_prefixes(s);
  PromptSpec spec;
  spec.payload = payload;
  spec.format = format;
  if (shape == "entity") spec.shape = PromptShape::kEntity;
  else if (shape == "text") spec.shape = PromptShape::kText;
  else if (shape == "question") spec.shape = PromptShape::kQuestion;
  else spec.shape = PromptShape::kBenchmarkEntity;
  std::string prompt;
  try {
    prompt = build_prompt(spec);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }

  LlmClientConfig cfg;
  cfg.mode = s.llm == "http" ? LlmMode::kHttp : LlmMode::kReplay;
  cfg.fixtures_dir = s.fixtures;
  cfg.base_url = s.llm_base_url;
  cfg.model = s.llm_model;
  cfg.api_key_env = s.llm_api_key_env;
  const auto client = make_llm_client(cfg);

  std::string response;
  try {
    response = client->fetch_response(prompt);
  } catch (const NoFixtureError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFactError;
  } catch (const TransportError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFactError;
  } catch (const ProtocolError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFactError;
  }
  const ParseReport extracted = extract_facts(response, prefixes);

  nlohmann::ordered_json envelope;
  envelope["prompt"] = prompt;
  envelope["prompt_hash"] = prompt_hash(prompt);
  envelope["extracted"] = extracted.triples.size();
  auto skipped = nlohmann::ordered_json::array();
  for (const auto& d : extracted.diagnostics) {
    if (d.severity == Severity::kSkipped) skipped.push_back({{"line", d.line}, {"message", d.message}});
  }
  envelope["skipped_lines"] = std::move(skipped);

  if (extracted.triples.empty()) {
    if (s.output == "json") {
      envelope["facts"] = nlohmann::ordered_json::array();
      out << envelope.dump(2) << "\n";
    } else {
      out << "prompt: " << prompt << "\n0 facts extracted (skipped lines: " << extracted.skipped_count()
          << ")\n";
    }
    return kExitOk;
  }
  if (s.output == "text") {
    out << "prompt: " << prompt << "\n" << extracted.triples.size() << " facts extracted (skipped lines: "
        << extracted.skipped_count() << ")\n\n";
  }
  std::vector<FactInput> inputs;
  for (const auto& t : extracted.triples) inputs.push_back({serialize_triple(t, &prefixes), t, ""});
  const BackendChoice b = make_backend(s, prefixes);
  const EncoderHandle enc = make_encoder(s);
  return report_validation(inputs, b, enc, s, prefixes, out, &envelope);
}

int cmd_bench_run(const Settings& s, const std::string& path, std::ostream& out) {
  const PrefixMap prefixes = load_prefixes(s);
  const auto records = load_benchmark(path, prefixes);
  const BackendChoice b = make_backend(s, prefixes);
  const EncoderHandle enc = make_encoder(s);
  EvaluationConfig cfg;
  cfg.validate = validate_options(s, b);
  cfg.tau = s.tau;
  cfg.parallelism = s.parallelism;
  cfg.backend = b.description;
  cfg.encoder = enc.model_name();
  const EvaluationReport report = evaluate(records, *b.backend, enc, cfg);
  const std::string json = report_json(report, s.timings).dump(2) + "\n";
  const std::string tables = report_tables(report, s.timings);
  if (!s.out_dir.empty()) {
    fs::create_directories(s.out_dir);
    write_file(fs::path(s.out_dir) / "report.json", json);
    write_file(fs::path(s.out_dir) / "report.txt", tables);
    write_file(fs::path(s.out_dir) / "worksheet.csv", worksheet_csv(report));
    write_file(fs::path(s.out_dir) / "histogram.csv", histogram_csv(report));
  }
  out << (s.output == "json" ? json : tables);
  return kExitOk;
}

int cmd_bench_stats(const Settings& s, const std::string& path, std::size_t top_n, std::ostream& out) {
  const PrefixMap prefixes = load_prefixes(s);
  const auto records = load_benchmark(path, prefixes);
  const BackendChoice b = make_backend(s, prefixes, /*required=*/false);
  std::optional<DereferenceCheck> check;
  if (b.local != nullptr) {
    const KnowledgeGraph* kg = b.local;
    check = [kg](std::string_view iri) { return kg->mentions(iri); };
  } else if (b.sparql != nullptr) {
    const SparqlClient* client = b.sparql;
    check = [client](std::string_view iri) { return client->check_dereferencable(iri); };
  } else if (b.backend) {
    throw ConfigError("dereferenceability needs --sparql or a local knowledge graph");
  }
  const BenchmarkStats stats = benchmark_stats(records, check ? &*check : nullptr, top_n, &prefixes);
  const std::string json = stats_json(stats).dump(2) + "\n";
  const std::string tables = stats_tables(stats);
  if (!s.out_dir.empty()) {
    fs::create_directories(s.out_dir);
    write_file(fs::path(s.out_dir) / "stats.json", json);
    write_file(fs::path(s.out_dir) / "stats.txt", tables);
  }
  out << (s.output == "json" ? json : tables);
  return kExitOk;
}

std::string kg_file_text(const std::vector<ProvenancedTriple>& kg, const std::string& source) {
  std::string text;
  for (const auto& t : kg) {
    if (t.source == source) text += serialize_triple(t.triple) + "\n";
  }
  return text;
}

int cmd_bench_synth(const Settings& s, const std::string& kind, std::uint64_t seed, std::ostream& out) {
  if (s.out_dir.empty()) throw ConfigError("bench synth needs --out-dir");
  fs::create_directories(s.out_dir);
  const fs::path dir(s.out_dir);
  if (kind == "paper") {
    std::string lines;
    for (const auto& r : make_paper_proportioned_benchmark()) lines += benchmark_line(r) + "\n";
    write_file(dir / "paper-proportioned.jsonl", lines);
    out << "wrote " << (dir / "paper-proportioned.jsonl").string() << "\n";
    return kExitOk;
  }
  const SyntheticBenchmark synth = make_synthetic_benchmark(seed);
  std::set<std::string> sources;
  for (const auto& t : synth.kg) sources.insert(t.source);
  std::string manifest;
  for (const auto& src : sources) {
    write_file(dir / ("kg-" + src + ".nt"), kg_file_text(synth.kg, src));
    manifest += src + "=kg-" + src + ".nt\n";
  }
  write_file(dir / "manifest.txt", manifest);
  std::string lines;
  for (const auto& r : synth.records) lines += benchmark_line(r) + "\n";
  write_file(dir / "benchmark.jsonl", lines);
  nlohmann::ordered_json expected;
  expected["seed"] = seed;
  expected["tau"] = kSynthTau;
  std::array<std::size_t, 4> counts{};
  auto per_fact = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < synth.records.size(); ++i) {
    ++counts[static_cast<std::size_t>(synth.expected_class[i])];
    per_fact.push_back({{"index", i},
                        {"class", to_string(synth.expected_class[i])},
                        {"rule", to_string(synth.expected_rule[i])}});
  }
  expected["counts"] = {{"C1", counts[0]}, {"C2", counts[1]}, {"C3", counts[2]}, {"C4", counts[3]}};
  expected["facts"] = std::move(per_fact);
  write_file(dir / "expected.json", expected.dump(2) + "\n");
  out << "wrote " << synth.kg.size() << " triples and " << synth.records.size() << " facts to "
      << dir.string() << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Validate LLM-produced RDF facts against knowledge graphs", "factcheck"};
  app.require_subcommand(1);

  std::vector<std::string> facts;
  std::string fact_file;
  auto* validate = app.add_subcommand("validate", "validate facts given as strings or in a file");
  add_common(validate, s);
  add_validation(validate, s);
  validate->add_option("facts", facts, "facts such as \"dbr:Aristotle dbo:birthPlace dbr:Stagira .\"");
  validate->add_option("--file", fact_file, "file of facts, one per line");

  std::string payload;
  std::string shape = "entity";
  std::string format = "DBpedia";
  auto* ask = app.add_subcommand("ask", "ask the LLM for facts and validate them");
  add_common(ask, s);
  add_validation(ask, s);
  ask->add_option("payload", payload, "entity name, text or question")->required();
  ask->add_option("--shape", shape, "entity, text, question or benchmark")
      ->check(CLI::IsMember({"entity", "text", "question", "benchmark"}));
  ask->add_option("--format", format, "format name used in the prompt");
  ask->add_option("--llm", s.llm, "replay or http")->check(CLI::IsMember({"replay", "http"}));
  ask->add_option("--fixtures", s.fixtures, "directory of recorded responses (replay)");

  auto* bench = app.add_subcommand("bench", "benchmark evaluation and statistics");
  bench->require_subcommand(1);
  std::string bench_path;
  std::size_t top_n = 10;
  std::string synth_kind = "seeded";
  std::uint64_t seed = kDefaultSynthSeed;
  auto* run_cmd = bench->add_subcommand("run", "validate and classify every benchmark fact");
  add_common(run_cmd, s);
  add_validation(run_cmd, s);
  run_cmd->add_option("benchmark", bench_path, "JSON-Lines benchmark")->required();
  run_cmd->add_option("--out-dir", s.out_dir, "write report.json, report.txt, worksheet.csv, histogram.csv");
  auto* stats_cmd = bench->add_subcommand("stats", "benchmark statistics and predicate frequencies");
  add_common(stats_cmd, s);
  add_backend(stats_cmd, s);
  stats_cmd->add_option("benchmark", bench_path, "JSON-Lines benchmark")->required();
  stats_cmd->add_option("--out-dir", s.out_dir, "write stats.json and stats.txt");
  stats_cmd->add_option("--top", top_n, "rows in the predicate tables");
  auto* synth_cmd = bench->add_subcommand("synth", "generate the seeded or paper-proportioned benchmark");
  add_common(synth_cmd, s);
  synth_cmd->add_option("--kind", synth_kind, "seeded or paper")->check(CLI::IsMember({"seeded", "paper"}));
  synth_cmd->add_option("--seed", seed, "generator seed");
  synth_cmd->add_option("--out-dir", s.out_dir, "output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  const CLI::App* active = nullptr;
  for (CLI::App* sub : {validate, ask, run_cmd, stats_cmd, synth_cmd}) {
    if (sub->parsed()) active = sub;
  }
  logger()->set_level(s.verbose ? spdlog::level::debug : spdlog::level::warn);

  try {
    if (!s.config.empty()) apply_config_file(s, s.config, *active);
    check_settings(s);
    if (validate->parsed()) return cmd_validate(s, facts, fact_file, out);
    if (ask->parsed()) return cmd_ask(s, payload, shape, format, out, err);
    if (run_cmd->parsed()) return cmd_bench_run(s, bench_path, out);
    if (stats_cmd->parsed()) return cmd_bench_stats(s, bench_path, top_n, out);
    if (synth_cmd->parsed()) return cmd_bench_synth(s, synth_kind, seed, out);
  } catch (const BenchmarkFormatError& e) {
    err << "error: benchmark " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const LoadError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFactError;
  }
  return kExitConfig;
}

}  // namespace factcheck::cli
