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


#include "http_endpoint.hpp"

#include "httplib.h"
#include "occucode/error.hpp"

namespace occucode::http {
namespace {

void configure(httplib::Client& client, std::chrono::milliseconds timeout) {
  const auto secs = static_cast<time_t>(timeout.count() / 1000);
  const auto usecs = static_cast<time_t>((timeout.count() % 1000) * 1000);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);
}

nlohmann::json handle(const httplib::Result& res, const std::string& what) {
  if (!res) {
    fail(ErrorKind::kBackendUnavailable,
         what + ": " + httplib::to_string(res.error()));
  }
  if (res->status >= 500) {
    fail(ErrorKind::kBackendUnavailable,
         what + ": HTTP " + std::to_string(res->status) + " " + res->body);
  }
  nlohmann::json body = nlohmann::json::parse(res->body, nullptr, /*allow_exceptions=*/false);
  if (res->status != 200) {
    std::string message = res->body;
    if (body.is_object() && body.contains("error") && body["error"].is_string()) {
      message = body["error"].get<std::string>();
    }
    fail(ErrorKind::kProtocolError,
         what + ": HTTP " + std::to_string(res->status) + " " + message);
  }
  if (body.is_discarded()) fail(ErrorKind::kProtocolError, what + ": response is not JSON");
  return body;
}

}  // namespace

Endpoint parse_endpoint(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos || url.substr(0, scheme_end) != "http") {
    fail(ErrorKind::kInvalidConfig, "endpoint must be an http:// URL, got '" + url + "'");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  Endpoint ep;
  ep.base = url.substr(0, path_start);
  if (ep.base.size() <= scheme_end + 3) {
    fail(ErrorKind::kInvalidConfig, "endpoint has no host: '" + url + "'");
  }
  if (path_start != std::string::npos) {
    ep.prefix = url.substr(path_start);
    while (!ep.prefix.empty() && ep.prefix.back() == '/') ep.prefix.pop_back();
  }
  return ep;
}

nlohmann::json post_json(const Endpoint& endpoint, const std::string& path,
                         const nlohmann::json& body, std::chrono::milliseconds timeout) {
  httplib::Client client(endpoint.base);
  configure(client, timeout);
  const std::string full = endpoint.prefix + path;
  auto res = client.Post(full, body.dump(), "application/json");
  return handle(res, "POST " + endpoint.base + full);
}

nlohmann::json get_json(const Endpoint& endpoint, const std::string& path,
                        std::chrono::milliseconds timeout) {
  httplib::Client client(endpoint.base);
  configure(client, timeout);
  const std::string full = endpoint.prefix + path;
  auto res = client.Get(full);
  return handle(res, "GET " + endpoint.base + full);
}

}  // namespace occucode::http
