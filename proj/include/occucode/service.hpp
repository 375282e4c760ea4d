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

#include <memory>
#include <string>
#include <string_view>

#include "occucode/pipeline.hpp"

namespace occucode {

// {"summarized": bool, "results": [{"rank", "code", "label", "score"}, ...]}
std::string outcome_to_json(const EmbeddingIndex& index, const QueryOutcome& outcome);

// Transport-independent request handling for the HTTP service. Stateless;
// safe for concurrent use.
class CodingService {
 public:
  struct Response {
    int status = 200;
    std::string body;
  };

  explicit CodingService(const OccupationCoder& coder) : coder_(coder) {}

  // POST /v1/code {"text": "...", "top_k": 10}
  Response handle_code(std::string_view request_body) const;
  // GET /v1/ready -> {dim, records, model, strategy, target}
  Response handle_ready() const;

 private:
  const OccupationCoder& coder_;
};

// Minimal HTTP front end over CodingService.
class HttpServer {
 public:
  explicit HttpServer(const CodingService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds; port 0 picks a free port. Returns the bound port. Throws
  // Error(kIoFailure) if binding fails.
  int bind(const std::string& host, int port);
  // Serves until stop(); requires a successful bind().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace occucode
