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


#include "occucode/eval.hpp"

#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <unordered_set>

#include <fmt/format.h>

#include "json.hpp"
#include "occucode/error.hpp"
#include "occucode/pipeline.hpp"

namespace occucode {
namespace {

// 1-based rank of truth within the first k items, or 0.
std::size_t rank_within(std::span<const OccupationCode> ranked, const OccupationCode& truth,
                        std::size_t k) {
  const std::size_t limit = std::min(k, ranked.size());
  for (std::size_t i = 0; i < limit; ++i) {
    if (ranked[i] == truth) return i + 1;
  }
  return 0;
}

// Runs body(i) for i in [0, n) across OpenMP threads; the first exception
// (lowest index) is rethrown after the loop.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct PreparedPolicy {
  std::vector<EmbeddingVector> queries;
  std::size_t n_summarized = 0;
  std::string summarizer_model = "-";
};

std::string strategy_column(const EvalRow& row) {
  return row.strategy ? std::string(to_string(*row.strategy)) : std::string("-");
}

}  // namespace

std::vector<LabeledDocument> load_dataset(std::istream& in) {
  std::vector<LabeledDocument> docs;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string where = "line " + std::to_string(line_no);

    const auto j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (!j.is_object()) fail(ErrorKind::kMalformedRecord, where + ": not a JSON object");
    for (const char* field : {"id", "text", "label"}) {
      if (!j.contains(field) || !j[field].is_string()) {
        fail(ErrorKind::kMalformedRecord, where + ": missing string field \"" + field + "\"");
      }
    }
    std::optional<OccupationCode> label;
    try {
      label = OccupationCode::parse(j["label"].get<std::string>());
    } catch (const Error& e) {
      fail(ErrorKind::kMalformedRecord, where + ": " + e.what());
    }
    LabeledDocument doc{j["id"].get<std::string>(), j["text"].get<std::string>(), *label};
    if (doc.text.find_first_not_of(" \t\r\n") == std::string::npos) {
      fail(ErrorKind::kMalformedRecord, where + ": empty text");
    }
    if (!ids.insert(doc.id).second) fail(ErrorKind::kDuplicateId, where + ": duplicate id " + doc.id);
    docs.push_back(std::move(doc));
  }
  if (in.bad()) fail(ErrorKind::kIoFailure, "failed reading dataset");
  return docs;
}

std::vector<LabeledDocument> load_dataset_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIoFailure, "cannot open dataset " + path.string());
  return load_dataset(in);
}

double hit_ratio_at_k(std::span<const OccupationCode> ranked, const OccupationCode& truth,
                      std::size_t k) {
  return rank_within(ranked, truth, k) > 0 ? 1.0 : 0.0;
}

double mrr_at_k(std::span<const OccupationCode> ranked, const OccupationCode& truth,
                std::size_t k) {
  const std::size_t rank = rank_within(ranked, truth, k);
  return rank > 0 ? 1.0 / static_cast<double>(rank) : 0.0;
}

double ndcg_at_k(std::span<const OccupationCode> ranked, const OccupationCode& truth,
                 std::size_t k) {
  const std::size_t rank = rank_within(ranked, truth, k);
  return rank > 0 ? 1.0 / std::log2(static_cast<double>(rank) + 1.0) : 0.0;
}

std::size_t expected_row_count(const EvalGrid& grid) {
  std::size_t rows = 0;
  for (auto level : grid.levels) {
    rows += grid.policies.size() *
            (level == GranularityTarget::kLeaf ? 1 : grid.strategies.size());
  }
  return rows;
}

EvalReport run_evaluation(const EvalGrid& grid, std::span<const LabeledDocument> documents,
                          const EmbeddingClient& client, Summarizer* summarizer,
                          const IndexProvider& indices) {
  if (documents.empty()) fail(ErrorKind::kInvalidConfig, "empty dataset");
  for (const auto& policy : grid.policies) {
    if (policy.can_trigger() && summarizer == nullptr) {
      fail(ErrorKind::kInvalidConfig,
           "summarization policy '" + to_string(policy) + "' needs a generation backend");
    }
  }

  EvalReport report;
  const std::size_t n = documents.size();
  const std::string model = client.model_id();

  std::map<std::string, PreparedPolicy> prepared;
  auto prepare = [&](const SummarizationPolicy& policy) -> const PreparedPolicy& {
    const std::string key = to_string(policy);
    if (auto it = prepared.find(key); it != prepared.end()) return it->second;

    std::vector<PreparedQuery> queries(n);
    parallel_for(n, [&](std::size_t i) {
      queries[i] = prepare_query(policy, summarizer, documents[i].text, grid.summarization_fallback);
    });
    PreparedPolicy out;
    std::vector<std::string> texts;
    texts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (queries[i].summarized) ++out.n_summarized;
      if (queries[i].warning) {
        report.warnings.push_back("document " + documents[i].id + " (" + key + "): " + *queries[i].warning);
      }
      texts.push_back(std::move(queries[i].text));
    }
    if (policy.can_trigger()) out.summarizer_model = summarizer->model_id();
    out.queries = client.embed(texts);
    return prepared.emplace(key, std::move(out)).first->second;
  };

  for (const auto level : grid.levels) {
    const bool leaf = level == GranularityTarget::kLeaf;
    const int lvl = target_level(level);

    std::vector<OccupationCode> truths;
    truths.reserve(n);
    for (const auto& doc : documents) {
      if (!leaf && doc.label.level() < lvl) {
        fail(ErrorKind::kMalformedRecord, "document " + doc.id + " label " + doc.label.str() +
                                              " is coarser than level " + std::to_string(lvl));
      }
      truths.push_back(leaf ? doc.label : truncate_code(doc.label, lvl));
    }

    for (const auto& policy : grid.policies) {
      const PreparedPolicy& queries = prepare(policy);
      const std::vector<MappingStrategy> strategies =
          leaf ? std::vector<MappingStrategy>{MappingStrategy::kTruncation} : grid.strategies;

      for (const auto strategy : strategies) {
        PipelineConfig config;
        config.target = level;
        config.strategy = strategy;
        config.policy = policy;
        config.top_k = kEvalDepth;
        config.truncation_expansion = grid.truncation_expansion;
        const EmbeddingIndex& index = indices(level, strategy);
        check_index_matches(config, index, model);

        std::vector<MetricRow> per_doc(n);
        parallel_for(n, [&](std::size_t i) {
          const auto codes = rank_query(config, index, queries.queries[i]).codes();
          const auto& truth = truths[i];
          per_doc[i] = {hit_ratio_at_k(codes, truth, 1),  hit_ratio_at_k(codes, truth, 5),
                        hit_ratio_at_k(codes, truth, 10), mrr_at_k(codes, truth, 5),
                        mrr_at_k(codes, truth, 10),       ndcg_at_k(codes, truth, 5),
                        ndcg_at_k(codes, truth, 10)};
        });

        MetricRow sum;
        for (const auto& m : per_doc) {
          sum.hr1 += m.hr1;
          sum.hr5 += m.hr5;
          sum.hr10 += m.hr10;
          sum.mrr5 += m.mrr5;
          sum.mrr10 += m.mrr10;
          sum.ndcg5 += m.ndcg5;
          sum.ndcg10 += m.ndcg10;
        }
        const auto dn = static_cast<double>(n);
        EvalRow row;
        row.level = level;
        if (!leaf) row.strategy = strategy;
        row.policy = policy;
        row.backend_model = model;
        row.summarizer_model = queries.summarizer_model;
        row.metrics = {sum.hr1 / dn,  sum.hr5 / dn,   sum.hr10 / dn,  sum.mrr5 / dn,
                       sum.mrr10 / dn, sum.ndcg5 / dn, sum.ndcg10 / dn};
        row.n_docs = n;
        row.n_summarized = queries.n_summarized;
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

std::string EvalReport::to_csv() const {
  std::string out =
      "level,strategy,policy,backend_model,summarizer_model,HR@1,HR@5,HR@10,MRR@5,MRR@10,"
      "NDCG@5,NDCG@10,n_docs,n_summarized\n";
  for (const auto& r : rows) {
    const auto& m = r.metrics;
    out += fmt::format("{},{},{},{},{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{},{}\n",
                       to_string(r.level), strategy_column(r), to_string(r.policy),
                       r.backend_model, r.summarizer_model, m.hr1, m.hr5, m.hr10, m.mrr5,
                       m.mrr10, m.ndcg5, m.ndcg10, r.n_docs, r.n_summarized);
  }
  return out;
}

std::string EvalReport::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) {
    const auto& m = r.metrics;
    arr.push_back({{"level", to_string(r.level)},
                   {"strategy", strategy_column(r)},
                   {"policy", to_string(r.policy)},
                   {"backend_model", r.backend_model},
                   {"summarizer_model", r.summarizer_model},
                   {"HR@1", m.hr1},
                   {"HR@5", m.hr5},
                   {"HR@10", m.hr10},
                   {"MRR@5", m.mrr5},
                   {"MRR@10", m.mrr10},
                   {"NDCG@5", m.ndcg5},
                   {"NDCG@10", m.ndcg10},
                   {"n_docs", r.n_docs},
                   {"n_summarized", r.n_summarized}});
  }
  return arr.dump(2) + "\n";
}

std::string EvalReport::to_table() const {
  std::string out = fmt::format("{:<6}{:<12}{:<12}{:>7}{:>7}{:>7}{:>8}{:>8}{:>8}{:>8}{:>8}{:>8}\n",
                                "level", "strategy", "policy", "HR@1", "HR@5", "HR@10", "MRR@5",
                                "MRR@10", "NDCG@5", "NDCG@10", "docs", "summ");
  for (const auto& r : rows) {
    const auto& m = r.metrics;
    out += fmt::format(
        "{:<6}{:<12}{:<12}{:>7.3f}{:>7.3f}{:>7.3f}{:>8.3f}{:>8.3f}{:>8.3f}{:>8.3f}{:>8}{:>8}\n",
        to_string(r.level), strategy_column(r), to_string(r.policy), m.hr1, m.hr5, m.hr10,
        m.mrr5, m.mrr10, m.ndcg5, m.ndcg10, r.n_docs, r.n_summarized);
  }
  return out;
}

}  // namespace occucode
