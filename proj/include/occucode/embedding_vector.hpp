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
#include <vector>

#include "occucode/code.hpp"

namespace occucode {

// Fixed-dimension real vector with finite components and dim > 0.
class EmbeddingVector {
 public:
  // Throws Error(kInvalidVector) for empty or non-finite input.
  explicit EmbeddingVector(std::vector<double> components);

  std::size_t dim() const noexcept { return components_.size(); }
  std::span<const double> values() const noexcept { return components_; }
  double operator[](std::size_t i) const noexcept { return components_[i]; }

  double norm() const noexcept;

  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;

 private:
  std::vector<double> components_;
};

struct ScoredCode {
  OccupationCode code;
  double score = 0.0;

  friend bool operator==(const ScoredCode&, const ScoredCode&) = default;
};

// Ordered query answer: scores non-increasing, ties by ascending code,
// codes pairwise distinct.
struct RankedResult {
  std::vector<ScoredCode> items;

  std::size_t size() const noexcept { return items.size(); }
  bool empty() const noexcept { return items.empty(); }
  std::vector<OccupationCode> codes() const;

  friend bool operator==(const RankedResult&, const RankedResult&) = default;
};

// Ranking order: higher score first, then ascending code.
inline bool ranks_before(const ScoredCode& a, const ScoredCode& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.code < b.code;
}

}  // namespace occucode
