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


#include "occucode/service.hpp"

#include "httplib.h"
#include "json.hpp"
#include "occucode/error.hpp"
#include "occucode/text_util.hpp"

namespace occucode {
namespace {

CodingService::Response error_response(int status, const std::string& message) {
  return {status, nlohmann::json{{"error", message}}.dump()};
}

int status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kEmptyText:
    case ErrorKind::kInvalidConfig:
      return 400;
    case ErrorKind::kBackendUnavailable:
      return 503;
    case ErrorKind::kProtocolError:
    case ErrorKind::kEmptyGeneration:
    case ErrorKind::kDimensionMismatch:
      return 502;
    default:
      return 500;
  }
}

}  // namespace

std::string outcome_to_json(const EmbeddingIndex& index, const QueryOutcome& outcome) {
  auto results = nlohmann::json::array();
  std::size_t rank = 1;
  for (const auto& item : outcome.results.items) {
    results.push_back({{"rank", rank++},
                       {"code", item.code.str()},
                       {"label", index.label(item.code)},
                       {"score", item.score}});
  }
  return nlohmann::json{{"summarized", outcome.summarized}, {"results", std::move(results)}}.dump();
}

CodingService::Response CodingService::handle_code(std::string_view request_body) const {
  const auto req = nlohmann::json::parse(request_body, nullptr, /*allow_exceptions=*/false);
  if (!req.is_object()) return error_response(400, "request body must be a JSON object");
  if (!req.contains("text") || !req["text"].is_string()) {
    return error_response(400, "missing string field \"text\"");
  }
  const auto text = req["text"].get<std::string>();
  if (trim(text).empty()) return error_response(400, "text is empty");

  std::optional<std::size_t> top_k;
  if (req.contains("top_k")) {
    if (!req["top_k"].is_number_unsigned() || req["top_k"].get<std::size_t>() == 0) {
      return error_response(400, "top_k must be a positive integer");
    }
    top_k = req["top_k"].get<std::size_t>();
  }

  try {
    const QueryOutcome outcome = coder_.code(text, top_k);
    return {200, outcome_to_json(coder_.index(), outcome)};
  } catch (const Error& e) {
    return error_response(status_for(e.kind()), e.what());
  } catch (const std::exception& e) {
    return error_response(500, e.what());
  }
}

CodingService::Response CodingService::handle_ready() const {
  const auto& index = coder_.index();
  const auto& meta = index.metadata();
  return {200, nlohmann::json{{"dim", index.dim()},
                              {"records", index.size()},
                              {"model", meta.backend_model},
                              {"strategy", to_string(meta.strategy)},
                              {"target", to_string(meta.target)}}
                   .dump()};
}

struct HttpServer::Impl {
  explicit Impl(const CodingService& s) : service(s) {
    server.Post("/v1/code", [this](const httplib::Request& req, httplib::Response& res) {
      const auto r = service.handle_code(req.body);
      res.status = r.status;
      res.set_content(r.body, "application/json");
    });
    // No SO_REUSEPORT: a second server on a taken port must fail to bind.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    server.Get("/v1/ready", [this](const httplib::Request&, httplib::Response& res) {
      const auto r = service.handle_ready();
      res.status = r.status;
      res.set_content(r.body, "application/json");
    });
  }

  const CodingService& service;
  httplib::Server server;
  bool bound = false;
};

HttpServer::HttpServer(const CodingService& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  int bound_port = port;
  if (port == 0) {
    bound_port = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound_port = -1;
  }
  if (bound_port < 0) {
    fail(ErrorKind::kIoFailure, "cannot bind " + host + ":" + std::to_string(port));
  }
  impl_->bound = true;
  return bound_port;
}

void HttpServer::listen() {
  if (!impl_->bound) fail(ErrorKind::kInvalidConfig, "listen() before bind()");
  impl_->server.listen_after_bind();
}

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace occucode
