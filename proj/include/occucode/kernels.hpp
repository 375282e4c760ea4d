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

namespace occucode::kernels {

// Dot product of `query` against every row of the row-major `rows` matrix
// (rows.size() == out.size() * query.size()). Each dot is a sequential
// left-to-right sum, so the serial and parallel variants agree bit for bit.
void score_rows_serial(std::span<const double> rows, std::span<const double> query,
                       std::span<double> out) noexcept;

// OpenMP row-parallel variant of score_rows_serial.
void score_rows_parallel(std::span<const double> rows, std::span<const double> query,
                         std::span<double> out) noexcept;

double dot(std::span<const double> a, std::span<const double> b) noexcept;

}  // namespace occucode::kernels
