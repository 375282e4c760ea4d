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
#include <string>

#include "json.hpp"

namespace occucode::http {

// "http://host:port/prefix" split into the part httplib::Client accepts and
// a path prefix that is prepended to every request path.
struct Endpoint {
  std::string base;
  std::string prefix;
};

// Throws Error(kInvalidConfig).
Endpoint parse_endpoint(const std::string& url);

// POSTs JSON and returns the parsed JSON body of a 200 response.
// Transport failures and 5xx -> kBackendUnavailable; 4xx, non-JSON bodies
// -> kProtocolError.
nlohmann::json post_json(const Endpoint& endpoint, const std::string& path,
                         const nlohmann::json& body, std::chrono::milliseconds timeout);

nlohmann::json get_json(const Endpoint& endpoint, const std::string& path,
                        std::chrono::milliseconds timeout);

}  // namespace occucode::http
