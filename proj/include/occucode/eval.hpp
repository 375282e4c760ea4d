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


#pragma once

#include <filesystem>
#include <functional>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "occucode/code.hpp"
#include "occucode/embedding.hpp"
#include "occucode/granularity.hpp"
#include "occucode/summarizer.hpp"
#include "occucode/vector_index.hpp"

namespace occucode {

struct LabeledDocument {
  std::string id;
  std::string text;
  OccupationCode label;
};

// JSONL, one {"id", "text", "label"} object per line; blank lines skipped.
// Throws Error(kMalformedRecord | kDuplicateId).
std::vector<LabeledDocument> load_dataset(std::istream& in);
std::vector<LabeledDocument> load_dataset_file(const std::filesystem::path& path);

// Single-relevant-item ranking metrics. Lists shorter than k are scored as
// they are. All require k >= 1 (k == 0 scores 0).
double hit_ratio_at_k(std::span<const OccupationCode> ranked, const OccupationCode& truth,
                      std::size_t k);
double mrr_at_k(std::span<const OccupationCode> ranked, const OccupationCode& truth,
                std::size_t k);
// 1 / log2(rank + 1) for 1-based rank <= k, else 0 (ideal DCG is 1).
double ndcg_at_k(std::span<const OccupationCode> ranked, const OccupationCode& truth,
                 std::size_t k);

struct MetricRow {
  double hr1 = 0, hr5 = 0, hr10 = 0;
  double mrr5 = 0, mrr10 = 0;
  double ndcg5 = 0, ndcg10 = 0;
};

struct EvalRow {
  GranularityTarget level = GranularityTarget::kLeaf;
  std::optional<MappingStrategy> strategy;  // empty for leaf rows
  SummarizationPolicy policy;
  std::string backend_model;
  std::string summarizer_model;  // "-" when the policy never summarizes
  MetricRow metrics;
  std::size_t n_docs = 0;
  std::size_t n_summarized = 0;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  std::vector<std::string> warnings;  // per-document summarization fallbacks

  std::string to_csv() const;
  std::string to_json() const;   // JSON array, one object per row
  std::string to_table() const;  // aligned, human-readable
};

struct EvalGrid {
  std::vector<GranularityTarget> levels{GranularityTarget::kLevel3, GranularityTarget::kLevel4,
                                        GranularityTarget::kLeaf};
  std::vector<SummarizationPolicy> policies{SummarizationPolicy::none(), SummarizationPolicy::all(),
                                            SummarizationPolicy::adaptive()};
  std::vector<MappingStrategy> strategies{MappingStrategy::kTruncation, MappingStrategy::kDirect,
                                          MappingStrategy::kClustering};
  std::size_t truncation_expansion = 5;
  bool summarization_fallback = true;
};

// Rows in grid order: for each level, for each policy, for each strategy
// (leaf levels get one row per policy).
std::size_t expected_row_count(const EvalGrid& grid);

using IndexProvider =
    std::function<const EmbeddingIndex&(GranularityTarget target, MappingStrategy strategy)>;

// Each document is prepared and embedded once per policy, then ranked to
// depth 10 against each (level, strategy) index. Truth labels are truncated
// to the row's level for 3/4. Throws Error(kInvalidConfig) for an empty
// dataset and Error(kMalformedRecord) for labels coarser than a row's level.
EvalReport run_evaluation(const EvalGrid& grid, std::span<const LabeledDocument> documents,
                          const EmbeddingClient& client, Summarizer* summarizer,
                          const IndexProvider& indices);

inline constexpr std::size_t kEvalDepth = 10;

}  // namespace occucode
