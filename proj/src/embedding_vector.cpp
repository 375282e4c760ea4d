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


#include "occucode/embedding_vector.hpp"

#include <cmath>

#include "occucode/error.hpp"

namespace occucode {

EmbeddingVector::EmbeddingVector(std::vector<double> components)
    : components_(std::move(components)) {
  if (components_.empty()) fail(ErrorKind::kInvalidVector, "vector has dimension 0");
  for (double v : components_) {
    if (!std::isfinite(v)) fail(ErrorKind::kInvalidVector, "vector has non-finite component");
  }
}

double EmbeddingVector::norm() const noexcept {
  double sum = 0.0;
  for (double v : components_) sum += v * v;
  return std::sqrt(sum);
}

std::vector<OccupationCode> RankedResult::codes() const {
  std::vector<OccupationCode> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(item.code);
  return out;
}

}  // namespace occucode
