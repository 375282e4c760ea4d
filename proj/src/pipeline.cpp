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


#include "occucode/pipeline.hpp"

#include <chrono>
#include <map>

#include "occucode/error.hpp"

namespace occucode {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

bool uses_truncation(GranularityTarget target, MappingStrategy strategy) {
  return target == GranularityTarget::kLeaf || strategy == MappingStrategy::kTruncation;
}

std::vector<EmbeddingVector> embed_entries(const Taxonomy& taxonomy, const EmbeddingClient& client,
                                           const std::vector<OccupationCode>& codes) {
  std::vector<std::string> texts;
  texts.reserve(codes.size());
  for (const auto& code : codes) texts.push_back(entry_text(*taxonomy.find(code)));
  return client.embed(texts);
}

}  // namespace

void PipelineConfig::validate() const {
  if (top_k == 0) fail(ErrorKind::kInvalidConfig, "top_k must be >= 1");
  if (truncation_expansion == 0) fail(ErrorKind::kInvalidConfig, "truncation_expansion must be >= 1");
  if (policy.kind == SummarizationPolicy::Kind::kAdaptive && policy.threshold_words == 0) {
    fail(ErrorKind::kInvalidConfig, "adaptive threshold must be >= 1 word");
  }
}

BuildResult build_embedding_db(const Taxonomy& taxonomy, const EmbeddingClient& client,
                               GranularityTarget target, MappingStrategy strategy,
                               const BuildOptions& options) {
  BuildReport report;
  std::vector<std::pair<OccupationCode, EmbeddingVector>> pairs;

  if (uses_truncation(target, strategy)) {
    const auto leaves = target_codes(taxonomy, GranularityTarget::kLeaf);
    auto vectors = embed_entries(taxonomy, client, leaves);
    for (std::size_t i = 0; i < leaves.size(); ++i) pairs.emplace_back(leaves[i], std::move(vectors[i]));
  } else if (strategy == MappingStrategy::kDirect) {
    const auto coarse = target_codes(taxonomy, target);
    auto vectors = embed_entries(taxonomy, client, coarse);
    for (std::size_t i = 0; i < coarse.size(); ++i) pairs.emplace_back(coarse[i], std::move(vectors[i]));
  } else {
    const int level = target_level(target);
    std::vector<OccupationCode> members;
    for (auto& leaf : target_codes(taxonomy, GranularityTarget::kLeaf)) {
      if (leaf.level() >= level) members.push_back(std::move(leaf));
    }
    std::map<OccupationCode, std::vector<EmbeddingVector>> clusters;
    if (!members.empty()) {
      auto vectors = embed_entries(taxonomy, client, members);
      for (std::size_t i = 0; i < members.size(); ++i) {
        clusters[truncate_code(members[i], level)].push_back(std::move(vectors[i]));
      }
    }
    for (const auto& code : target_codes(taxonomy, target)) {
      const auto it = clusters.find(code);
      if (it == clusters.end()) {
        report.skipped_clusters.push_back(code);
        report.warnings.push_back("no leaf codes under " + code.str() + "; skipped");
        continue;
      }
      pairs.emplace_back(code, cluster_vector(it->second));
    }
  }

  IndexMetadata metadata;
  metadata.taxonomy_hash = taxonomy.content_hash();
  metadata.backend_model = client.model_id();
  metadata.strategy = target == GranularityTarget::kLeaf ? MappingStrategy::kTruncation : strategy;
  metadata.target = target;
  metadata.created_at = options.created_at.value_or(
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count());
  for (const auto& [code, vec] : pairs) {
    metadata.labels.emplace(code.str(), taxonomy.find(code)->preferred_label);
  }

  report.records = pairs.size();
  report.model = metadata.backend_model;
  return {build_index(std::move(pairs), std::move(metadata)), std::move(report)};
}

void check_index_matches(const PipelineConfig& config, const EmbeddingIndex& index,
                         std::string_view model_id) {
  const auto& meta = index.metadata();
  if (meta.target != config.target) {
    fail(ErrorKind::kConfigMismatch, "index was built for granularity " +
                                         std::string(to_string(meta.target)) + ", query asks for " +
                                         std::string(to_string(config.target)));
  }
  if (config.target != GranularityTarget::kLeaf && meta.strategy != config.strategy) {
    fail(ErrorKind::kConfigMismatch, "index was built with mapping " +
                                         std::string(to_string(meta.strategy)) + ", query asks for " +
                                         std::string(to_string(config.strategy)));
  }
  if (meta.backend_model != model_id) {
    fail(ErrorKind::kConfigMismatch, "index was built with embedding model '" +
                                         meta.backend_model + "', backend reports '" +
                                         std::string(model_id) + "'");
  }
}

RankedResult rank_query(const PipelineConfig& config, const EmbeddingIndex& index,
                        const EmbeddingVector& query) {
  if (config.target == GranularityTarget::kLeaf || config.strategy != MappingStrategy::kTruncation) {
    return search(index, query, config.top_k);
  }
  const int level = target_level(config.target);
  const std::size_t fetch = std::min(index.size(), config.top_k * config.truncation_expansion);
  RankedResult results = dedup_truncated(search(index, query, fetch), level, config.top_k);
  if (results.size() < config.top_k && fetch < index.size()) {
    results = dedup_truncated(search(index, query, index.size()), level, config.top_k);
  }
  return results;
}

QueryOutcome code_document(const PipelineConfig& config, const EmbeddingIndex& index,
                           const EmbeddingClient& client, Summarizer* summarizer,
                           std::string_view document) {
  config.validate();
  check_index_matches(config, index, client.model_id());

  QueryOutcome outcome;
  auto t0 = Clock::now();
  PreparedQuery prepared =
      prepare_query(config.policy, summarizer, document, config.summarization_fallback);
  outcome.timing.prepare_ms = elapsed_ms(t0);

  t0 = Clock::now();
  const EmbeddingVector query = client.embed_one(prepared.text);
  outcome.timing.embed_ms = elapsed_ms(t0);

  t0 = Clock::now();
  outcome.results = rank_query(config, index, query);
  outcome.timing.search_ms = elapsed_ms(t0);

  outcome.prepared_text = std::move(prepared.text);
  outcome.summarized = prepared.summarized;
  outcome.warning = std::move(prepared.warning);
  return outcome;
}

OccupationCoder::OccupationCoder(PipelineConfig config, EmbeddingIndex index,
                                 std::unique_ptr<EmbeddingClient> client,
                                 std::unique_ptr<Summarizer> summarizer)
    : config_(std::move(config)),
      index_(std::move(index)),
      client_(std::move(client)),
      summarizer_(std::move(summarizer)) {
  config_.validate();
  if (!client_) fail(ErrorKind::kInvalidConfig, "no embedding client");
  if (config_.policy.can_trigger() && !summarizer_) {
    fail(ErrorKind::kInvalidConfig, "summarization policy '" + to_string(config_.policy) +
                                        "' needs a generation backend");
  }
  check_index_matches(config_, index_, client_->model_id());
}

QueryOutcome OccupationCoder::code(std::string_view document,
                                   std::optional<std::size_t> top_k) const {
  PipelineConfig config = config_;
  if (top_k) config.top_k = *top_k;
  return code_document(config, index_, *client_, summarizer_.get(), document);
}

}  // namespace occucode
