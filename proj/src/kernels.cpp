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


#include "occucode/kernels.hpp"

#include <cstddef>
#include <cstdint>

namespace occucode::kernels {

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

void score_rows_serial(std::span<const double> rows, std::span<const double> query,
                       std::span<double> out) noexcept {
  const std::size_t dim = query.size();
  for (std::size_t r = 0; r < out.size(); ++r) {
    out[r] = dot(rows.subspan(r * dim, dim), query);
  }
}

void score_rows_parallel(std::span<const double> rows, std::span<const double> query,
                         std::span<double> out) noexcept {
  const std::size_t dim = query.size();
  const auto n = static_cast<std::int64_t>(out.size());
  const double* base = rows.data();
  const double* q = query.data();
  double* dst = out.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < n; ++r) {
    const double* row = base + static_cast<std::size_t>(r) * dim;
    double sum = 0.0;
    for (std::size_t i = 0; i < dim; ++i) sum += row[i] * q[i];
    dst[r] = sum;
  }
}

}  // namespace occucode::kernels
