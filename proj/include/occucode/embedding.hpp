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

#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "occucode/embedding_vector.hpp"

namespace occucode {

struct EmbeddingBackendConfig {
  enum class Kind { kRemote, kDeterministicMock };

  Kind kind = Kind::kDeterministicMock;
  std::string endpoint;                     // Remote only
  std::optional<std::size_t> expected_dim;  // enforced on every response
  std::size_t mock_dim = 64;                // DeterministicMock only
  std::size_t batch_size = 32;
  std::chrono::milliseconds timeout{30000};
  std::size_t max_parallel_requests = 4;

  // Throws Error(kInvalidConfig).
  void validate() const;
};

// One protocol round trip: texts in, one vector per text out (same order).
class EmbeddingBackend {
 public:
  virtual ~EmbeddingBackend() = default;
  virtual std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) = 0;
  virtual std::string model_id() = 0;
};

// Hashed bag of words: ASCII-lowercase, split on Unicode whitespace, each
// token counted into bucket xxh64(token, seed 0) mod dim, then L2-normalized.
// Throws Error(kEmptyText).
EmbeddingVector mock_embed(std::string_view text, std::size_t dim);

class MockEmbeddingBackend final : public EmbeddingBackend {
 public:
  explicit MockEmbeddingBackend(std::size_t dim);
  std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) override;
  std::string model_id() override;

 private:
  std::size_t dim_;
};

// Client for POST {endpoint}/v1/embed.
class RemoteEmbeddingBackend final : public EmbeddingBackend {
 public:
  RemoteEmbeddingBackend(std::string endpoint, std::chrono::milliseconds timeout);
  std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) override;
  // Model id reported by the last response; asks GET /v1/ready if none yet.
  std::string model_id() override;

 private:
  std::string endpoint_;
  std::chrono::milliseconds timeout_;
  std::mutex mu_;
  std::string model_;
};

std::unique_ptr<EmbeddingBackend> make_embedding_backend(const EmbeddingBackendConfig& config);

// Batches texts into chunks of batch_size, keeps up to max_parallel_requests
// chunks in flight, and checks the response contract. Any failed chunk
// fails the whole call.
class EmbeddingClient {
 public:
  explicit EmbeddingClient(const EmbeddingBackendConfig& config);
  EmbeddingClient(std::unique_ptr<EmbeddingBackend> backend, const EmbeddingBackendConfig& config);

  // Throws Error(kEmptyText | kBackendUnavailable | kDimensionMismatch |
  // kProtocolError).
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) const;
  EmbeddingVector embed_one(std::string text) const;

  std::string model_id() const { return backend_->model_id(); }
  const EmbeddingBackendConfig& config() const noexcept { return config_; }

 private:
  std::unique_ptr<EmbeddingBackend> backend_;
  EmbeddingBackendConfig config_;
};

}  // namespace occucode
