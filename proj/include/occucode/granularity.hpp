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

#include <span>
#include <string_view>
#include <vector>

#include "occucode/code.hpp"
#include "occucode/embedding_vector.hpp"
#include "occucode/taxonomy.hpp"

namespace occucode {

// How coarse-level predictions are produced.
//   Truncation: search leaf codes, cut hits to the target prefix.
//   Direct:     search the target-level codes' own descriptions.
//   Clustering: search target-level codes represented by the mean of their
//               subordinate leaf embeddings.
enum class MappingStrategy { kTruncation, kDirect, kClustering };

enum class GranularityTarget { kLevel3, kLevel4, kLeaf };

std::string_view to_string(MappingStrategy strategy);
std::string_view to_string(GranularityTarget target);
// Accept "truncation" | "direct" | "cluster" ("clustering").
MappingStrategy parse_strategy(std::string_view text);
// Accept "3" | "4" | "leaf" ("5+").
GranularityTarget parse_target(std::string_view text);

// 3 or 4 for coarse targets; 0 for Leaf.
int target_level(GranularityTarget target) noexcept;

// First `level` digits of the code, level in 1..4. Throws Error(kTooCoarse)
// when the code is coarser than `level`.
OccupationCode truncate_code(const OccupationCode& code, int level);

// Leaf: every code without a descendant in the taxonomy. 3/4: every code at
// exactly that level. Sorted by canonical code.
std::vector<OccupationCode> target_codes(const Taxonomy& taxonomy, GranularityTarget target);

// Componentwise arithmetic mean, not re-normalized.
// Throws Error(kEmptyCluster | kDimensionMismatch).
EmbeddingVector cluster_vector(std::span<const EmbeddingVector> leaf_vectors);

// Replaces each ranked leaf code by its level-truncation and keeps the first
// (highest scored) occurrence of every truncated code, at most k of them.
// Codes coarser than `level` cannot be mapped and are skipped.
RankedResult dedup_truncated(const RankedResult& ranked, int level, std::size_t k);

}  // namespace occucode
