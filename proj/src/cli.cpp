/*
 * Copyright 2026 The occucode Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "occucode/cli.hpp"

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include <pthread.h>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "occucode/eval.hpp"
#include "occucode/pipeline.hpp"
#include "occucode/service.hpp"

namespace occucode {

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kBackendUnavailable:
    case ErrorKind::kProtocolError:
    case ErrorKind::kEmptyGeneration:
    case ErrorKind::kDimensionMismatch:
    case ErrorKind::kZeroVector:
    case ErrorKind::kInvalidVector:
      return kExitBackend;
    case ErrorKind::kIoFailure:
    case ErrorKind::kCorruptIndex:
      return kExitIo;
    default:
      return kExitConfig;
  }
}

namespace {

namespace fs = std::filesystem;

struct BackendOptions {
  std::string backend = "mock";
  std::size_t dim = 64;
  std::string endpoint;
  std::size_t expected_dim = 0;
  std::size_t batch_size = 32;
  long timeout_ms = 30000;
  std::size_t max_parallel = 4;

  std::string summarizer = "auto";
  std::string summarizer_endpoint;
  double temperature = 0.0;
  long summary_timeout_ms = 120000;
  std::size_t mock_summary_words = 40;
  std::size_t max_inflight_generation = 4;
  bool strict = false;
};

struct QueryOptions {
  std::string level;
  std::string mapping;
  std::size_t top_k = 10;
  std::size_t expansion = 5;
  std::string summarize = "no";
  std::size_t threshold = 300;
};

EmbeddingBackendConfig embedding_config(const BackendOptions& o) {
  EmbeddingBackendConfig c;
  if (o.backend == "mock") {
    c.kind = EmbeddingBackendConfig::Kind::kDeterministicMock;
  } else if (o.backend == "remote") {
    c.kind = EmbeddingBackendConfig::Kind::kRemote;
  } else {
    fail(ErrorKind::kInvalidConfig, "--backend must be mock or remote, got '" + o.backend + "'");
  }
  c.endpoint = o.endpoint;
  if (o.expected_dim > 0) c.expected_dim = o.expected_dim;
  c.mock_dim = o.dim;
  c.batch_size = o.batch_size;
  c.timeout = std::chrono::milliseconds(o.timeout_ms);
  c.max_parallel_requests = o.max_parallel;
  c.validate();
  return c;
}

// nullptr when no generation backend is configured.
std::unique_ptr<Summarizer> make_summarizer(const BackendOptions& o, bool needed,
                                            std::string_view policy_name) {
  std::string kind = o.summarizer;
  if (kind == "auto") {
    if (!o.summarizer_endpoint.empty()) {
      kind = "remote";
    } else {
      kind = o.backend == "mock" ? "mock" : "none";
    }
  }
  if (kind == "none") {
    if (needed) {
      fail(ErrorKind::kInvalidConfig, "summarization policy '" + std::string(policy_name) +
                                          "' needs --summarizer mock|remote");
    }
    return nullptr;
  }
  if (!needed) return nullptr;

  GenerationBackendConfig c;
  if (kind == "mock") {
    c.kind = GenerationBackendConfig::Kind::kMock;
  } else if (kind == "remote") {
    c.kind = GenerationBackendConfig::Kind::kRemote;
  } else {
    fail(ErrorKind::kInvalidConfig, "--summarizer must be auto, none, mock or remote");
  }
  c.endpoint = o.summarizer_endpoint;
  c.temperature = o.temperature;
  c.timeout = std::chrono::milliseconds(o.summary_timeout_ms);
  c.mock_summary_words = o.mock_summary_words;
  c.max_in_flight = o.max_inflight_generation;
  return std::make_unique<Summarizer>(c);
}

SummarizationPolicy policy_from(const std::string& name, std::size_t threshold) {
  SummarizationPolicy p = parse_policy(name);
  if (p.kind == SummarizationPolicy::Kind::kAdaptive && name == "adaptive") {
    if (threshold == 0) fail(ErrorKind::kInvalidConfig, "--threshold must be >= 1");
    p.threshold_words = threshold;
  }
  return p;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void require(const std::string& value, std::string_view flag) {
  if (value.empty()) fail(ErrorKind::kInvalidConfig, "missing required option " + std::string(flag));
}

std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string tsv_safe(std::string s) {
  for (char& c : s) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

PipelineConfig pipeline_config(const QueryOptions& q, const BackendOptions& b,
                               const EmbeddingIndex& index) {
  PipelineConfig config;
  config.target = q.level.empty() ? index.metadata().target : parse_target(q.level);
  config.strategy = q.mapping.empty() ? index.metadata().strategy : parse_strategy(q.mapping);
  config.policy = policy_from(q.summarize, q.threshold);
  config.top_k = q.top_k;
  config.truncation_expansion = q.expansion;
  config.summarization_fallback = !b.strict;
  config.validate();
  return config;
}

OccupationCoder make_coder(const QueryOptions& q, const BackendOptions& b, EmbeddingIndex index) {
  PipelineConfig config = pipeline_config(q, b, index);
  auto client = std::make_unique<EmbeddingClient>(embedding_config(b));
  auto summarizer = make_summarizer(b, config.policy.can_trigger(), to_string(config.policy));
  return OccupationCoder(config, std::move(index), std::move(client), std::move(summarizer));
}

void add_query_options(CLI::App* cmd, QueryOptions& q) {
  cmd->add_option("--level", q.level, "Granularity: 3, 4 or leaf (default: the index's)");
  cmd->add_option("--mapping", q.mapping,
                  "Mapping strategy: truncation, direct or cluster (default: the index's)");
  cmd->add_option("--top-k", q.top_k, "Number of codes to return")->capture_default_str();
  cmd->add_option("--expansion", q.expansion, "Leaf candidates per requested code for truncation")
      ->capture_default_str();
  cmd->add_option("--summarize", q.summarize, "Summarization policy: no, all or adaptive")
      ->capture_default_str();
  cmd->add_option("--threshold", q.threshold, "Adaptive summarization word threshold")
      ->capture_default_str();
}

// Applies `key = value` entries from a TOML-style file as option defaults,
// so environment variables and flags still take precedence.
void apply_config_file(CLI::App& app, const std::string& path) {
  if (!fs::exists(path)) fail(ErrorKind::kIoFailure, "config file not found: " + path);
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_file(path);
  } catch (const CLI::Error& e) {
    fail(ErrorKind::kInvalidConfig, "cannot parse config " + path + ": " + e.what());
  }

  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    std::string key = item.name;
    for (char& c : key) {
      if (c == '_') c = '-';
    }
    if (key == "config" || key == "help") fail(ErrorKind::kInvalidConfig, "key '" + key + "' not allowed in config");

    std::vector<CLI::Option*> targets;
    auto consider = [&](CLI::App* scope) {
      if (auto* opt = scope->get_option_no_throw("--" + key)) targets.push_back(opt);
    };
    if (item.parents.empty()) {
      consider(&app);
      for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) consider(sub);
    } else if (item.parents.size() == 1) {
      if (auto* sub = app.get_subcommand_no_throw(item.parents.front())) consider(sub);
    }
    if (targets.empty()) {
      std::string full;
      for (const auto& p : item.parents) full += p + ".";
      fail(ErrorKind::kInvalidConfig, "unknown config key '" + full + item.name + "'");
    }

    std::string value;
    for (std::size_t i = 0; i < item.inputs.size(); ++i) {
      if (i) value += ",";
      value += item.inputs[i];
    }
    for (auto* opt : targets) {
      try {
        opt->default_val(value);
      } catch (const CLI::Error& e) {
        fail(ErrorKind::kInvalidConfig, "config key '" + key + "': " + e.what());
      }
    }
  }
}

void set_env_names(CLI::App& app) {
  auto apply = [](CLI::App* scope) {
    for (auto* opt : scope->get_options()) {
      const auto& names = opt->get_lnames();
      if (names.empty() || names.front() == "help" || names.front() == "config") continue;
      std::string env = "OCCUCODE_";
      for (char c : names.front()) env += c == '-' ? '_' : static_cast<char>(std::toupper(c));
      opt->envname(env);
    }
  };
  apply(&app);
  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) apply(sub);
}

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) fail(ErrorKind::kInvalidConfig, "--config needs a path");
      return args[i + 1];
    }
    if (args[i].starts_with("--config=")) return args[i].substr(9);
  }
  if (const char* env = std::getenv("OCCUCODE_CONFIG"); env && *env) return std::string(env);
  return std::nullopt;
}

int cmd_build_index(const BackendOptions& b, const std::string& taxonomy_path,
                    const std::string& target, const std::string& mapping,
                    const std::string& out_path, bool no_alt_labels,
                    std::optional<std::int64_t> created_at, std::ostream& out,
                    std::ostream& err) {
  require(taxonomy_path, "--taxonomy");
  require(out_path, "--out");
  const auto granularity = parse_target(target);
  const auto strategy = parse_strategy(mapping);
  const EmbeddingClient client(embedding_config(b));

  const Taxonomy taxonomy = load_taxonomy_file(taxonomy_path, {.include_alt_labels = !no_alt_labels});
  for (const auto& w : taxonomy.warnings()) err << "warning: " << w << "\n";

  BuildOptions options;
  options.created_at = created_at;
  const BuildResult built = build_embedding_db(taxonomy, client, granularity, strategy, options);
  save_index_file(built.index, out_path);

  for (const auto& w : built.report.warnings) err << "warning: " << w << "\n";
  out << "index: " << out_path << "\n";
  out << "records: " << built.report.records << "\n";
  out << "dim: " << built.index.dim() << "\n";
  out << "target: " << to_string(granularity) << "\n";
  out << "mapping: " << to_string(built.index.metadata().strategy) << "\n";
  out << "model: " << built.report.model << "\n";
  out << "skipped_clusters: " << built.report.skipped_clusters.size();
  for (const auto& code : built.report.skipped_clusters) out << " " << code.str();
  out << "\n";
  return kExitOk;
}

int cmd_query(const BackendOptions& b, const QueryOptions& q, const std::string& index_path,
              const std::string& text, const std::string& file, bool json, std::istream& in,
              std::ostream& out, std::ostream& err) {
  require(index_path, "--index");
  std::string document = text;
  if (document.empty() && !file.empty()) {
    std::ifstream f(file, std::ios::binary);
    if (!f) fail(ErrorKind::kIoFailure, "cannot open " + file);
    document = read_all(f);
  } else if (document.empty()) {
    document = read_all(in);
  }

  const OccupationCoder coder = make_coder(q, b, load_index_file(index_path));
  const QueryOutcome outcome = coder.code(document);
  if (outcome.warning) err << "warning: " << *outcome.warning << "\n";

  if (json) {
    out << outcome_to_json(coder.index(), outcome) << "\n";
    return kExitOk;
  }
  out << fmt::format("{:>4}  {:<14}{:<44}{:>9}  {}\n", "rank", "code", "label", "score",
                     "summarized");
  std::size_t rank = 1;
  for (const auto& item : outcome.results.items) {
    out << fmt::format("{:>4}  {:<14}{:<44}{:>9.6f}  {}\n", rank++, item.code.str(),
                       coder.index().label(item.code), item.score,
                       outcome.summarized ? "true" : "false");
  }
  return kExitOk;
}

fs::path cached_index_path(const fs::path& dir, GranularityTarget target, MappingStrategy strategy) {
  if (target == GranularityTarget::kLeaf) return dir / "leaf.ocix";
  return dir / fmt::format("level{}-{}.ocix", to_string(target), to_string(strategy));
}

int cmd_evaluate(const BackendOptions& b, const std::string& taxonomy_path,
                 const std::string& dataset_path, const std::string& levels,
                 const std::string& policies, const std::string& mappings, std::size_t threshold,
                 std::size_t expansion, const std::string& csv_path, const std::string& index_dir,
                 bool no_alt_labels, bool json, std::ostream& out, std::ostream& err) {
  require(taxonomy_path, "--taxonomy");
  require(dataset_path, "--dataset");

  EvalGrid grid;
  grid.levels.clear();
  grid.policies.clear();
  grid.strategies.clear();
  for (const auto& l : split_list(levels)) grid.levels.push_back(parse_target(l));
  for (const auto& p : split_list(policies)) grid.policies.push_back(policy_from(p, threshold));
  for (const auto& m : split_list(mappings)) grid.strategies.push_back(parse_strategy(m));
  if (grid.levels.empty() || grid.policies.empty()) {
    fail(ErrorKind::kInvalidConfig, "--levels and --policies must not be empty");
  }
  if (grid.strategies.empty()) grid.strategies.push_back(MappingStrategy::kTruncation);
  grid.truncation_expansion = expansion;
  grid.summarization_fallback = !b.strict;

  const auto documents = load_dataset_file(dataset_path);
  if (documents.empty()) fail(ErrorKind::kInvalidConfig, "empty dataset");

  bool any_summary = false;
  for (const auto& p : grid.policies) any_summary = any_summary || p.can_trigger();
  const EmbeddingClient client(embedding_config(b));
  auto summarizer = make_summarizer(b, any_summary, any_summary ? "all/adaptive" : "no");

  const Taxonomy taxonomy = load_taxonomy_file(taxonomy_path, {.include_alt_labels = !no_alt_labels});
  for (const auto& w : taxonomy.warnings()) err << "warning: " << w << "\n";

  std::map<std::pair<GranularityTarget, MappingStrategy>, EmbeddingIndex> cache;
  const IndexProvider provider = [&](GranularityTarget target,
                                     MappingStrategy strategy) -> const EmbeddingIndex& {
    if (target == GranularityTarget::kLeaf) strategy = MappingStrategy::kTruncation;
    const auto key = std::make_pair(target, strategy);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    if (!index_dir.empty()) {
      const fs::path path = cached_index_path(index_dir, target, strategy);
      if (fs::exists(path)) {
        EmbeddingIndex idx = load_index_file(path);
        if (idx.metadata().taxonomy_hash == taxonomy.content_hash() &&
            idx.metadata().backend_model == client.model_id()) {
          return cache.emplace(key, std::move(idx)).first->second;
        }
        err << "note: " << path.string() << " is stale; rebuilding\n";
      }
    }
    BuildResult built = build_embedding_db(taxonomy, client, target, strategy);
    for (const auto& w : built.report.warnings) err << "warning: " << w << "\n";
    if (!index_dir.empty()) {
      fs::create_directories(index_dir);
      save_index_file(built.index, cached_index_path(index_dir, target, strategy));
    }
    return cache.emplace(key, std::move(built.index)).first->second;
  };

  const EvalReport report = run_evaluation(grid, documents, client, summarizer.get(), provider);
  for (const auto& w : report.warnings) err << "warning: " << w << "\n";

  if (!csv_path.empty()) {
    std::ofstream f(csv_path, std::ios::binary | std::ios::trunc);
    if (!f) fail(ErrorKind::kIoFailure, "cannot write " + csv_path);
    f << report.to_csv();
    if (!f) fail(ErrorKind::kIoFailure, "failed writing " + csv_path);
  }
  out << (json ? report.to_json() : report.to_table());
  return kExitOk;
}

int cmd_export(const std::string& index_path, const std::string& out_path, std::ostream& out) {
  require(index_path, "--index");
  const EmbeddingIndex index = load_index_file(index_path);

  std::ofstream file;
  std::ostream* sink = &out;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path, std::ios::binary | std::ios::trunc);
    if (!file) fail(ErrorKind::kIoFailure, "cannot write " + out_path);
    sink = &file;
  }

  std::string header = "code\tlabel";
  for (std::size_t d = 0; d < index.dim(); ++d) header += fmt::format("\td{}", d);
  *sink << header << "\n";
  for (std::size_t i = 0; i < index.size(); ++i) {
    std::string row = index.code(i).str() + "\t" + tsv_safe(index.label(index.code(i)));
    for (double v : index.vector(i)) row += fmt::format("\t{:.17g}", v);
    *sink << row << "\n";
  }
  sink->flush();
  if (!*sink) fail(ErrorKind::kIoFailure, "failed writing embeddings");
  return kExitOk;
}

int cmd_serve(const BackendOptions& b, const QueryOptions& q, const std::string& index_path,
              const std::string& host, int port, std::ostream& out, std::ostream& err) {
  require(index_path, "--index");
  const OccupationCoder coder = make_coder(q, b, load_index_file(index_path));
  const CodingService service(coder);
  HttpServer server(service);

  // Block termination signals here so every server thread inherits the mask
  // and a dedicated thread receives them via sigwait.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  const int bound = server.bind(host, port);
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  out << "listening on " << host << ":" << bound << "\n" << std::flush;
  server.listen();
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  err << "shut down\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Occupation coding over a hierarchical taxonomy with embedding retrieval",
               "occucode"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--config", "TOML-style key = value defaults (env OCCUCODE_CONFIG)");

  BackendOptions b;
  app.add_option("--backend", b.backend, "Embedding backend: mock or remote")->capture_default_str();
  app.add_option("--dim", b.dim, "Mock embedding dimension")->capture_default_str();
  app.add_option("--endpoint", b.endpoint, "Remote embedding server URL");
  app.add_option("--expected-dim", b.expected_dim, "Reject embeddings of any other dimension");
  app.add_option("--batch-size", b.batch_size)->capture_default_str();
  app.add_option("--timeout-ms", b.timeout_ms)->capture_default_str();
  app.add_option("--max-parallel", b.max_parallel, "Concurrent embedding requests")
      ->capture_default_str();
  app.add_option("--summarizer", b.summarizer, "Generation backend: auto, none, mock or remote")
      ->capture_default_str();
  app.add_option("--summarizer-endpoint", b.summarizer_endpoint, "Remote generation server URL");
  app.add_option("--temperature", b.temperature)->capture_default_str();
  app.add_option("--summary-timeout-ms", b.summary_timeout_ms)->capture_default_str();
  app.add_option("--mock-summary-words", b.mock_summary_words)->capture_default_str();
  app.add_option("--max-inflight-generation", b.max_inflight_generation)->capture_default_str();
  app.add_flag("--strict", b.strict, "Fail instead of falling back when summarization fails");

  std::string taxonomy_path, out_path, target = "leaf", mapping = "truncation";
  bool no_alt_labels = false;
  std::optional<std::int64_t> created_at;
  auto* build = app.add_subcommand("build-index", "Embed the taxonomy and write an index file");
  build->add_option("--taxonomy", taxonomy_path, "Taxonomy CSV");
  build->add_option("--target", target, "Granularity: 3, 4 or leaf")->capture_default_str();
  build->add_option("--mapping", mapping, "truncation, direct or cluster")->capture_default_str();
  build->add_option("--out", out_path, "Index file to write");
  build->add_flag("--no-alt-labels", no_alt_labels, "Embed labels and descriptions only");
  build->add_option("--created-at", created_at, "Fixed creation timestamp (Unix seconds)");

  QueryOptions q;
  std::string index_path, text, file;
  bool json = false;
  auto* query = app.add_subcommand("query", "Code one document");
  query->add_option("--index", index_path, "Index file");
  query->add_option("--text", text, "Document text");
  query->add_option("--file", file, "Read the document from a file (default: stdin)");
  add_query_options(query, q);
  query->add_flag("--json", json, "Emit JSON");

  std::string dataset_path, levels = "3,4,leaf", policies = "no,all,adaptive",
                            mappings = "truncation,direct,cluster", csv_path, index_dir;
  std::size_t eval_threshold = 300, eval_expansion = 5;
  auto* evaluate = app.add_subcommand("evaluate", "Score a labeled dataset over a config grid");
  evaluate->add_option("--taxonomy", taxonomy_path, "Taxonomy CSV");
  evaluate->add_option("--dataset", dataset_path, "Labeled JSONL dataset");
  evaluate->add_option("--levels", levels)->capture_default_str();
  evaluate->add_option("--policies", policies)->capture_default_str();
  evaluate->add_option("--mappings", mappings)->capture_default_str();
  evaluate->add_option("--threshold", eval_threshold)->capture_default_str();
  evaluate->add_option("--expansion", eval_expansion)->capture_default_str();
  evaluate->add_option("--out", csv_path, "Write the report CSV here");
  evaluate->add_option("--index-dir", index_dir, "Load/save per-configuration indices here");
  evaluate->add_flag("--no-alt-labels", no_alt_labels);
  evaluate->add_flag("--json", json, "Emit the report as JSON on stdout");

  std::string export_out;
  auto* exporter = app.add_subcommand("export-embeddings", "Write index vectors as TSV");
  exporter->add_option("--index", index_path, "Index file");
  exporter->add_option("--out", export_out, "TSV file (default: stdout)");

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Serve /v1/code and /v1/ready over HTTP");
  serve->add_option("--index", index_path, "Index file");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  add_query_options(serve, q);

  set_env_names(app);

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    if (const auto config = find_config_path(args)) apply_config_file(app, *config);
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }

  try {
    if (*build) {
      return cmd_build_index(b, taxonomy_path, target, mapping, out_path, no_alt_labels,
                             created_at, out, err);
    }
    if (*query) return cmd_query(b, q, index_path, text, file, json, in, out, err);
    if (*evaluate) {
      return cmd_evaluate(b, taxonomy_path, dataset_path, levels, policies, mappings,
                          eval_threshold, eval_expansion, csv_path, index_dir, no_alt_labels,
                          json, out, err);
    }
    if (*exporter) return cmd_export(index_path, export_out, out);
    if (*serve) return cmd_serve(b, q, index_path, host, port, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (exit_code_for(e.kind()) == kExitConfig && e.kind() == ErrorKind::kInvalidConfig) {
      err << app.get_subcommands().front()->help();
    }
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitConfig;
}

}  // namespace occucode
