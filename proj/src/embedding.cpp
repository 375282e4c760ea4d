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


#include "occucode/embedding.hpp"

#include <cmath>
#include <future>

#include "http_endpoint.hpp"
#include "occucode/error.hpp"
#include "occucode/hashing.hpp"
#include "occucode/text_util.hpp"

namespace occucode {

void EmbeddingBackendConfig::validate() const {
  if (kind == Kind::kRemote && endpoint.empty()) {
    fail(ErrorKind::kInvalidConfig, "remote embedding backend needs an endpoint");
  }
  if (kind == Kind::kRemote) http::parse_endpoint(endpoint);
  if (kind == Kind::kDeterministicMock && mock_dim == 0) {
    fail(ErrorKind::kInvalidConfig, "mock embedding dim must be positive");
  }
  if (batch_size == 0) fail(ErrorKind::kInvalidConfig, "batch_size must be >= 1");
  if (max_parallel_requests == 0) {
    fail(ErrorKind::kInvalidConfig, "max_parallel_requests must be >= 1");
  }
  if (expected_dim && *expected_dim == 0) {
    fail(ErrorKind::kInvalidConfig, "expected_dim must be positive");
  }
}

EmbeddingVector mock_embed(std::string_view text, std::size_t dim) {
  if (dim == 0) fail(ErrorKind::kInvalidConfig, "mock embedding dim must be positive");
  const std::string lowered = ascii_lower(text);
  const auto tokens = split_whitespace(lowered);
  if (tokens.empty()) fail(ErrorKind::kEmptyText, "cannot embed empty text");

  std::vector<double> counts(dim, 0.0);
  for (auto tok : tokens) counts[xxh64(tok, 0) % dim] += 1.0;
  double sq = 0.0;
  for (double c : counts) sq += c * c;
  const double norm = std::sqrt(sq);
  for (double& c : counts) c /= norm;
  return EmbeddingVector(std::move(counts));
}

MockEmbeddingBackend::MockEmbeddingBackend(std::size_t dim) : dim_(dim) {
  if (dim_ == 0) fail(ErrorKind::kInvalidConfig, "mock embedding dim must be positive");
}

std::vector<EmbeddingVector> MockEmbeddingBackend::embed_batch(std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(mock_embed(t, dim_));
  return out;
}

std::string MockEmbeddingBackend::model_id() { return "mock-bow-xxh64-d" + std::to_string(dim_); }

RemoteEmbeddingBackend::RemoteEmbeddingBackend(std::string endpoint,
                                               std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {}

std::vector<EmbeddingVector> RemoteEmbeddingBackend::embed_batch(
    std::span<const std::string> texts) {
  const auto ep = http::parse_endpoint(endpoint_);
  nlohmann::json request{{"texts", nlohmann::json::array()}};
  for (const auto& t : texts) request["texts"].push_back(t);
  const nlohmann::json body = http::post_json(ep, "/v1/embed", request, timeout_);

  auto protocol = [](const std::string& why) { fail(ErrorKind::kProtocolError, "embed response: " + why); };
  if (!body.is_object()) protocol("not a JSON object");
  if (!body.contains("embeddings") || !body["embeddings"].is_array()) protocol("missing embeddings array");
  if (!body.contains("dim") || !body["dim"].is_number_unsigned()) protocol("missing dim");
  const auto& embeddings = body["embeddings"];
  const auto dim = body["dim"].get<std::size_t>();
  if (embeddings.size() != texts.size()) {
    protocol("expected " + std::to_string(texts.size()) + " embeddings, got " +
             std::to_string(embeddings.size()));
  }

  std::vector<EmbeddingVector> out;
  out.reserve(embeddings.size());
  for (const auto& row : embeddings) {
    if (!row.is_array()) protocol("embedding is not an array");
    if (row.size() != dim) {
      fail(ErrorKind::kDimensionMismatch, "embed response: declared dim " + std::to_string(dim) +
                                              " but vector has " + std::to_string(row.size()));
    }
    std::vector<double> values;
    values.reserve(row.size());
    for (const auto& v : row) {
      if (!v.is_number()) protocol("non-numeric component");
      values.push_back(v.get<double>());
    }
    try {
      out.emplace_back(std::move(values));
    } catch (const Error& e) {
      protocol(e.what());
    }
  }
  if (body.contains("model") && body["model"].is_string()) {
    std::lock_guard lock(mu_);
    model_ = body["model"].get<std::string>();
  }
  return out;
}

std::string RemoteEmbeddingBackend::model_id() {
  {
    std::lock_guard lock(mu_);
    if (!model_.empty()) return model_;
  }
  const auto body = http::get_json(http::parse_endpoint(endpoint_), "/v1/ready", timeout_);
  if (!body.is_object() || !body.contains("model") || !body["model"].is_string()) {
    fail(ErrorKind::kProtocolError, "ready response lacks a model id");
  }
  std::lock_guard lock(mu_);
  model_ = body["model"].get<std::string>();
  return model_;
}

std::unique_ptr<EmbeddingBackend> make_embedding_backend(const EmbeddingBackendConfig& config) {
  config.validate();
  if (config.kind == EmbeddingBackendConfig::Kind::kRemote) {
    return std::make_unique<RemoteEmbeddingBackend>(config.endpoint, config.timeout);
  }
  return std::make_unique<MockEmbeddingBackend>(config.mock_dim);
}

EmbeddingClient::EmbeddingClient(const EmbeddingBackendConfig& config)
    : EmbeddingClient(make_embedding_backend(config), config) {}

EmbeddingClient::EmbeddingClient(std::unique_ptr<EmbeddingBackend> backend,
                                 const EmbeddingBackendConfig& config)
    : backend_(std::move(backend)), config_(config) {
  config_.validate();
  if (!backend_) fail(ErrorKind::kInvalidConfig, "embedding backend is null");
}

std::vector<EmbeddingVector> EmbeddingClient::embed(std::span<const std::string> texts) const {
  if (texts.empty()) fail(ErrorKind::kEmptyText, "no texts to embed");
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (trim(texts[i]).empty()) {
      fail(ErrorKind::kEmptyText, "text " + std::to_string(i) + " is empty");
    }
  }

  const std::size_t batch = config_.batch_size;
  const std::size_t n_chunks = (texts.size() + batch - 1) / batch;
  std::vector<std::vector<EmbeddingVector>> chunks(n_chunks);

  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = c * batch;
    const std::size_t len = std::min(batch, texts.size() - begin);
    auto vectors = backend_->embed_batch(texts.subspan(begin, len));
    if (vectors.size() != len) {
      fail(ErrorKind::kProtocolError, "backend returned " + std::to_string(vectors.size()) +
                                          " vectors for " + std::to_string(len) + " texts");
    }
    chunks[c] = std::move(vectors);
  };

  if (n_chunks == 1 || config_.max_parallel_requests == 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    // Waves of at most max_parallel_requests in-flight chunks.
    for (std::size_t wave = 0; wave < n_chunks; wave += config_.max_parallel_requests) {
      const std::size_t wave_end = std::min(n_chunks, wave + config_.max_parallel_requests);
      std::vector<std::future<void>> inflight;
      for (std::size_t c = wave; c < wave_end; ++c) {
        inflight.push_back(std::async(std::launch::async, run_chunk, c));
      }
      std::exception_ptr first_error;
      for (auto& f : inflight) {
        try {
          f.get();
        } catch (...) {
          if (!first_error) first_error = std::current_exception();
        }
      }
      if (first_error) std::rethrow_exception(first_error);
    }
  }

  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (auto& chunk : chunks) {
    for (auto& v : chunk) out.push_back(std::move(v));
  }
  const std::size_t dim = config_.expected_dim.value_or(out.front().dim());
  for (const auto& v : out) {
    if (v.dim() != dim) {
      fail(ErrorKind::kDimensionMismatch, "backend returned dim " + std::to_string(v.dim()) +
                                              ", expected " + std::to_string(dim));
    }
  }
  return out;
}

EmbeddingVector EmbeddingClient::embed_one(std::string text) const {
  const std::string texts[] = {std::move(text)};
  return std::move(embed(texts).front());
}

}  // namespace occucode
