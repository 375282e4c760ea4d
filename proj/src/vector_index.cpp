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


#include "occucode/vector_index.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numeric>
#include <unordered_set>

#include <fmt/format.h>

#include "json.hpp"
#include "occucode/error.hpp"
#include "occucode/hashing.hpp"
#include "occucode/kernels.hpp"

namespace occucode {
namespace {

double l2_norm(std::span<const double> v) {
  return std::sqrt(kernels::dot(v, v));
}

class ByteWriter {
 public:
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
  void bytes(std::string_view s) { buf_.insert(buf_.end(), s.begin(), s.end()); }
  void string(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes(s);
  }
  std::vector<std::uint8_t>& buffer() { return buf_; }

 private:
  void put(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  double f64() { return std::bit_cast<double>(get(8)); }
  std::string_view bytes(std::size_t n) {
    need(n);
    std::string_view s(reinterpret_cast<const char*>(data_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  std::string_view string() { return bytes(u32()); }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) fail(ErrorKind::kCorruptIndex, "index file is truncated");
  }
  std::uint64_t get(int n) {
    need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(data_[pos_ + i]) << (8 * i);
    pos_ += static_cast<std::size_t>(n);
    return v;
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

nlohmann::json metadata_to_json(const IndexMetadata& m) {
  return {
      {"taxonomy_hash", fmt::format("{:016x}", m.taxonomy_hash)},
      {"backend_model", m.backend_model},
      {"strategy", to_string(m.strategy)},
      {"target", to_string(m.target)},
      {"created_at", m.created_at},
      {"labels", m.labels},
  };
}

IndexMetadata metadata_from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (!j.is_object()) fail(ErrorKind::kCorruptIndex, "metadata block is not a JSON object");
  try {
    IndexMetadata m;
    const auto hash = j.at("taxonomy_hash").get<std::string>();
    std::size_t consumed = 0;
    m.taxonomy_hash = std::stoull(hash, &consumed, 16);
    if (consumed != hash.size()) throw std::invalid_argument("taxonomy_hash");
    m.backend_model = j.at("backend_model").get<std::string>();
    m.strategy = parse_strategy(j.at("strategy").get<std::string>());
    m.target = parse_target(j.at("target").get<std::string>());
    m.created_at = j.at("created_at").get<std::int64_t>();
    m.labels = j.at("labels").get<std::map<std::string, std::string>>();
    return m;
  } catch (const std::exception& e) {
    fail(ErrorKind::kCorruptIndex, std::string("bad metadata block: ") + e.what());
  }
}

}  // namespace

std::optional<std::size_t> EmbeddingIndex::find(const OccupationCode& code) const {
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    if (codes_[i] == code) return i;
  }
  return std::nullopt;
}

std::string EmbeddingIndex::label(const OccupationCode& code) const {
  const auto it = metadata_.labels.find(code.str());
  return it == metadata_.labels.end() ? std::string() : it->second;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    fail(ErrorKind::kDimensionMismatch,
         fmt::format("cosine of dim {} and dim {} vectors", a.size(), b.size()));
  }
  const double na = l2_norm(a);
  const double nb = l2_norm(b);
  if (na == 0.0 || nb == 0.0) fail(ErrorKind::kZeroVector, "cosine of a zero vector");
  return std::clamp(kernels::dot(a, b) / (na * nb), -1.0, 1.0);
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  return cosine(a.values(), b.values());
}

EmbeddingIndex build_index(std::vector<std::pair<OccupationCode, EmbeddingVector>> pairs,
                           IndexMetadata metadata) {
  if (pairs.empty()) fail(ErrorKind::kInvalidConfig, "cannot build an index from zero records");
  EmbeddingIndex index;
  index.dim_ = pairs.front().second.dim();
  index.codes_.reserve(pairs.size());
  index.data_.reserve(pairs.size() * index.dim_);

  std::unordered_set<OccupationCode> seen;
  for (auto& [code, vec] : pairs) {
    if (vec.dim() != index.dim_) {
      fail(ErrorKind::kDimensionMismatch,
           fmt::format("record {} has dim {}, expected {}", code.str(), vec.dim(), index.dim_));
    }
    if (!seen.insert(code).second) {
      fail(ErrorKind::kDuplicateCode, "duplicate code " + code.str() + " in index");
    }
    const double norm = vec.norm();
    if (norm == 0.0) fail(ErrorKind::kZeroVector, "record " + code.str() + " has a zero vector");
    for (double v : vec.values()) index.data_.push_back(v / norm);
    index.codes_.push_back(code);
  }
  index.metadata_ = std::move(metadata);
  return index;
}

RankedResult search(const EmbeddingIndex& index, std::span<const double> query, std::size_t k,
                    ScanMode mode) {
  if (query.size() != index.dim()) {
    fail(ErrorKind::kDimensionMismatch,
         fmt::format("query dim {} does not match index dim {}", query.size(), index.dim()));
  }
  const double norm = l2_norm(query);
  if (norm == 0.0) fail(ErrorKind::kZeroVector, "query is a zero vector");
  std::vector<double> unit(query.begin(), query.end());
  for (double& v : unit) v /= norm;

  std::vector<double> scores(index.size());
  if (mode == ScanMode::kParallel) {
    kernels::score_rows_parallel(index.data(), unit, scores);
  } else {
    kernels::score_rows_serial(index.data(), unit, scores);
  }
  for (double& s : scores) s = std::clamp(s, -1.0, 1.0);

  const std::size_t take = std::min(k, index.size());
  std::vector<std::size_t> order(index.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& codes = index.codes();
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      return codes[a] < codes[b];
                    });

  RankedResult result;
  result.items.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    result.items.push_back({codes[order[i]], scores[order[i]]});
  }
  return result;
}

void save_index(const EmbeddingIndex& index, std::ostream& out) {
  ByteWriter w;
  w.bytes("OCIX");
  w.u16(kIndexFormatVersion);
  w.u32(static_cast<std::uint32_t>(index.dim()));
  w.u32(static_cast<std::uint32_t>(index.size()));
  w.string(metadata_to_json(index.metadata()).dump());
  for (std::size_t i = 0; i < index.size(); ++i) {
    w.string(index.code(i).str());
    for (double v : index.vector(i)) w.f64(v);
  }
  w.u32(crc32c(w.buffer()));

  const auto& buf = w.buffer();
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  out.flush();
  if (!out) fail(ErrorKind::kIoFailure, "failed writing index");
}

EmbeddingIndex load_index(std::istream& in) {
  const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                        std::istreambuf_iterator<char>()};
  if (in.bad()) fail(ErrorKind::kIoFailure, "failed reading index");
  if (bytes.size() < 4 + 2 + 4 + 4 + 4 + 4) fail(ErrorKind::kCorruptIndex, "index file is truncated");

  const std::span<const std::uint8_t> all(bytes);
  const auto body = all.first(all.size() - 4);
  ByteReader tail(all.last(4));
  if (crc32c(body) != tail.u32()) fail(ErrorKind::kCorruptIndex, "checksum mismatch");

  ByteReader r(body);
  if (r.bytes(4) != "OCIX") fail(ErrorKind::kCorruptIndex, "bad magic");
  if (const auto version = r.u16(); version != kIndexFormatVersion) {
    fail(ErrorKind::kCorruptIndex, fmt::format("unsupported format version {}", version));
  }
  const std::size_t dim = r.u32();
  const std::size_t count = r.u32();
  if (dim == 0 || count == 0) fail(ErrorKind::kCorruptIndex, "empty index");
  IndexMetadata metadata = metadata_from_json(r.string());

  // Each record needs at least 4 + dim * 8 bytes; reject absurd counts early.
  if (r.remaining() / (4 + dim * 8) < count) fail(ErrorKind::kCorruptIndex, "index file is truncated");

  EmbeddingIndex index;
  index.dim_ = dim;
  index.codes_.reserve(count);
  index.data_.reserve(count * dim);
  std::unordered_set<OccupationCode> seen;
  for (std::size_t i = 0; i < count; ++i) {
    std::optional<OccupationCode> code;
    try {
      code = OccupationCode::parse(r.string());
    } catch (const Error& e) {
      fail(ErrorKind::kCorruptIndex, std::string("bad record code: ") + e.what());
    }
    if (!seen.insert(*code).second) fail(ErrorKind::kCorruptIndex, "duplicate code " + code->str());
    double sq = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double v = r.f64();
      if (!std::isfinite(v)) fail(ErrorKind::kCorruptIndex, "non-finite vector component");
      sq += v * v;
      index.data_.push_back(v);
    }
    if (std::abs(std::sqrt(sq) - 1.0) > 1e-6) {
      fail(ErrorKind::kCorruptIndex, "record " + code->str() + " is not unit norm");
    }
    index.codes_.push_back(std::move(*code));
  }
  if (r.remaining() != 0) fail(ErrorKind::kCorruptIndex, "trailing bytes after records");
  index.metadata_ = std::move(metadata);
  return index;
}

void save_index_file(const EmbeddingIndex& index, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kIoFailure, "cannot open " + path.string() + " for writing");
  save_index(index, out);
}

EmbeddingIndex load_index_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIoFailure, "cannot open index file " + path.string());
  return load_index(in);
}

}  // namespace occucode
