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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "occucode/code.hpp"
#include "occucode/embedding_vector.hpp"
#include "occucode/granularity.hpp"

namespace occucode {

struct IndexMetadata {
  std::uint64_t taxonomy_hash = 0;
  std::string backend_model;
  MappingStrategy strategy = MappingStrategy::kTruncation;
  GranularityTarget target = GranularityTarget::kLeaf;
  std::int64_t created_at = 0;  // Unix seconds, UTC
  // Preferred label per indexed code, so query/export/serve need only the
  // index file.
  std::map<std::string, std::string> labels;

  friend bool operator==(const IndexMetadata&, const IndexMetadata&) = default;
};

// Immutable exact cosine index. Vectors are unit-normalized at build and
// stored contiguously (row-major) so a query is one dot-product scan.
class EmbeddingIndex {
 public:
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return codes_.size(); }
  const OccupationCode& code(std::size_t i) const { return codes_.at(i); }
  const std::vector<OccupationCode>& codes() const noexcept { return codes_; }
  std::span<const double> vector(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * dim_, dim_);
  }
  std::span<const double> data() const noexcept { return data_; }
  const IndexMetadata& metadata() const noexcept { return metadata_; }
  std::optional<std::size_t> find(const OccupationCode& code) const;
  // Preferred label, or empty when the metadata carries none.
  std::string label(const OccupationCode& code) const;

  friend bool operator==(const EmbeddingIndex&, const EmbeddingIndex&) = default;

 private:
  friend EmbeddingIndex build_index(std::vector<std::pair<OccupationCode, EmbeddingVector>>,
                                    IndexMetadata);
  friend EmbeddingIndex load_index(std::istream&);

  std::size_t dim_ = 0;
  std::vector<OccupationCode> codes_;
  std::vector<double> data_;
  IndexMetadata metadata_;
};

// dot(a,b) / (|a| |b|), clamped to [-1, 1].
// Throws Error(kDimensionMismatch | kZeroVector).
double cosine(std::span<const double> a, std::span<const double> b);
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

// Throws Error(kZeroVector | kDuplicateCode | kDimensionMismatch), or
// Error(kInvalidConfig) for an empty pair list.
EmbeddingIndex build_index(std::vector<std::pair<OccupationCode, EmbeddingVector>> pairs,
                           IndexMetadata metadata);

enum class ScanMode { kParallel, kSerial };

// Top-min(k, size) records by cosine score, ties by ascending code.
// kSerial is the single-threaded reference scan; both modes return identical
// results. Throws Error(kDimensionMismatch | kZeroVector).
RankedResult search(const EmbeddingIndex& index, std::span<const double> query, std::size_t k,
                    ScanMode mode = ScanMode::kParallel);
inline RankedResult search(const EmbeddingIndex& index, const EmbeddingVector& query,
                           std::size_t k, ScanMode mode = ScanMode::kParallel) {
  return search(index, query.values(), k, mode);
}

// OCIX binary format, little-endian:
//   "OCIX" | u16 version | u32 dim | u32 count | u32 len + metadata JSON |
//   count x (u32 len + code UTF-8, dim x binary64) | u32 CRC-32C of all
//   preceding bytes.
// Throws Error(kIoFailure); load also Error(kCorruptIndex).
void save_index(const EmbeddingIndex& index, std::ostream& out);
EmbeddingIndex load_index(std::istream& in);
void save_index_file(const EmbeddingIndex& index, const std::filesystem::path& path);
EmbeddingIndex load_index_file(const std::filesystem::path& path);

inline constexpr std::uint16_t kIndexFormatVersion = 1;

}  // namespace occucode
