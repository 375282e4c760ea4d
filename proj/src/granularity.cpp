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


#include "occucode/granularity.hpp"

#include <unordered_set>

#include "occucode/error.hpp"

namespace occucode {

std::string_view to_string(MappingStrategy strategy) {
  switch (strategy) {
    case MappingStrategy::kTruncation: return "truncation";
    case MappingStrategy::kDirect: return "direct";
    case MappingStrategy::kClustering: return "cluster";
  }
  return "?";
}

std::string_view to_string(GranularityTarget target) {
  switch (target) {
    case GranularityTarget::kLevel3: return "3";
    case GranularityTarget::kLevel4: return "4";
    case GranularityTarget::kLeaf: return "leaf";
  }
  return "?";
}

MappingStrategy parse_strategy(std::string_view text) {
  if (text == "truncation") return MappingStrategy::kTruncation;
  if (text == "direct") return MappingStrategy::kDirect;
  if (text == "cluster" || text == "clustering") return MappingStrategy::kClustering;
  fail(ErrorKind::kInvalidConfig, "unknown mapping strategy '" + std::string(text) +
                                      "' (expected truncation, direct or cluster)");
}

GranularityTarget parse_target(std::string_view text) {
  if (text == "3") return GranularityTarget::kLevel3;
  if (text == "4") return GranularityTarget::kLevel4;
  if (text == "leaf" || text == "5+") return GranularityTarget::kLeaf;
  fail(ErrorKind::kInvalidConfig,
       "unknown granularity '" + std::string(text) + "' (expected 3, 4 or leaf)");
}

int target_level(GranularityTarget target) noexcept {
  switch (target) {
    case GranularityTarget::kLevel3: return 3;
    case GranularityTarget::kLevel4: return 4;
    case GranularityTarget::kLeaf: return 0;
  }
  return 0;
}

OccupationCode truncate_code(const OccupationCode& code, int level) {
  if (level < 1 || level > 4) {
    fail(ErrorKind::kTooCoarse, "truncation level must be in 1..4, got " + std::to_string(level));
  }
  if (code.level() < level) {
    fail(ErrorKind::kTooCoarse,
         code.str() + " is coarser than level " + std::to_string(level));
  }
  return code.ancestor(level);
}

std::vector<OccupationCode> target_codes(const Taxonomy& taxonomy, GranularityTarget target) {
  std::vector<OccupationCode> out;
  const int level = target_level(target);
  for (const auto& [code, entry] : taxonomy.entries()) {
    const bool keep = target == GranularityTarget::kLeaf ? !taxonomy.has_descendant(code)
                                                         : code.level() == level;
    if (keep) out.push_back(code);
  }
  return out;  // std::map iteration is already canonical order
}

EmbeddingVector cluster_vector(std::span<const EmbeddingVector> leaf_vectors) {
  if (leaf_vectors.empty()) fail(ErrorKind::kEmptyCluster, "no leaf vectors to aggregate");
  const std::size_t dim = leaf_vectors.front().dim();
  std::vector<double> sum(dim, 0.0);
  for (const auto& v : leaf_vectors) {
    if (v.dim() != dim) {
      fail(ErrorKind::kDimensionMismatch, "cluster member has dim " + std::to_string(v.dim()) +
                                              ", expected " + std::to_string(dim));
    }
    for (std::size_t i = 0; i < dim; ++i) sum[i] += v[i];
  }
  const auto n = static_cast<double>(leaf_vectors.size());
  for (double& x : sum) x /= n;
  return EmbeddingVector(std::move(sum));
}

RankedResult dedup_truncated(const RankedResult& ranked, int level, std::size_t k) {
  RankedResult out;
  std::unordered_set<OccupationCode> seen;
  for (const auto& item : ranked.items) {
    if (out.size() >= k) break;
    if (item.code.level() < level) continue;
    OccupationCode truncated = truncate_code(item.code, level);
    if (seen.insert(truncated).second) {
      out.items.push_back({std::move(truncated), item.score});
    }
  }
  return out;
}

}  // namespace occucode
