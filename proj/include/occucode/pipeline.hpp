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

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "occucode/embedding.hpp"
#include "occucode/granularity.hpp"
#include "occucode/summarizer.hpp"
#include "occucode/taxonomy.hpp"
#include "occucode/vector_index.hpp"

namespace occucode {

struct PipelineConfig {
  GranularityTarget target = GranularityTarget::kLeaf;
  MappingStrategy strategy = MappingStrategy::kTruncation;  // ignored for kLeaf
  SummarizationPolicy policy = SummarizationPolicy::none();
  std::size_t top_k = 10;
  std::size_t truncation_expansion = 5;
  bool summarization_fallback = true;

  void validate() const;
};

struct BuildReport {
  std::size_t records = 0;
  std::vector<OccupationCode> skipped_clusters;  // coarse codes with no leaves
  std::string model;
  std::vector<std::string> warnings;
};

struct BuildResult {
  EmbeddingIndex index;
  BuildReport report;
};

struct BuildOptions {
  // Fixed timestamp for reproducible index files; now() when unset.
  std::optional<std::int64_t> created_at;
};

// Embedding phase for one (target, strategy):
//   Leaf or Truncation -> one record per leaf code;
//   Direct             -> one record per level-3/4 code, own text;
//   Clustering         -> one record per level-3/4 code, mean of the leaf
//                         vectors under it (codes with no leaves skipped).
BuildResult build_embedding_db(const Taxonomy& taxonomy, const EmbeddingClient& client,
                               GranularityTarget target, MappingStrategy strategy,
                               const BuildOptions& options = {});

struct QueryTiming {
  double prepare_ms = 0.0;
  double embed_ms = 0.0;
  double search_ms = 0.0;
};

struct QueryOutcome {
  RankedResult results;
  std::string prepared_text;
  bool summarized = false;
  std::optional<std::string> warning;
  QueryTiming timing;
};

// Throws Error(kConfigMismatch) when the index was built for another
// target, strategy, or embedding model.
void check_index_matches(const PipelineConfig& config, const EmbeddingIndex& index,
                         std::string_view model_id);

// Retrieval and ranking for an already embedded query. Truncation at level
// 3/4 searches top_k * truncation_expansion leaves and deduplicates their
// prefixes, widening to the whole index if fewer than top_k survive.
RankedResult rank_query(const PipelineConfig& config, const EmbeddingIndex& index,
                        const EmbeddingVector& query);

// Query phase: prepare (maybe summarize) -> embed -> retrieve -> rank.
QueryOutcome code_document(const PipelineConfig& config, const EmbeddingIndex& index,
                           const EmbeddingClient& client, Summarizer* summarizer,
                           std::string_view document);

// Shared query entry point for the CLI and the HTTP service.
class OccupationCoder {
 public:
  // Validates config and index/model binding up front.
  OccupationCoder(PipelineConfig config, EmbeddingIndex index,
                  std::unique_ptr<EmbeddingClient> client,
                  std::unique_ptr<Summarizer> summarizer);

  QueryOutcome code(std::string_view document, std::optional<std::size_t> top_k = {}) const;

  const EmbeddingIndex& index() const noexcept { return index_; }
  const PipelineConfig& config() const noexcept { return config_; }

 private:
  PipelineConfig config_;
  EmbeddingIndex index_;
  std::unique_ptr<EmbeddingClient> client_;
  std::unique_ptr<Summarizer> summarizer_;
};

}  // namespace occucode
