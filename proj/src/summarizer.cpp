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


#include "occucode/summarizer.hpp"

#include <charconv>

#include "http_endpoint.hpp"
#include "occucode/error.hpp"
#include "occucode/text_util.hpp"

namespace occucode {

const std::string_view kDefaultSummaryPrompt =
    "Human: Given the following job posting, please summarize \n"
    "the key duties and functionalities. \n"
    "Your summary should be within 10 bullet points of \n"
    "duties/functionalites/responsibilities. \n"
    "Here is an example summary with the required format. \n"
    "You need to follow the template below.\n"
    "\n"
    "Job Title: ATM repair technician\n"
    "Key responsibilities:\n"
    "1. install, diagnose, maintain and repair automatic teller machines. \n"
    "2. travel to clients' location to provide their services. \n"
    "3. use hand tools and software to fix malfunctioning money distributors.\n"
    "4. night shifts.\n"
    "\n"
    "Now begins the job posting you need to summarize.\n";

std::string to_string(const SummarizationPolicy& policy) {
  switch (policy.kind) {
    case SummarizationPolicy::Kind::kNone: return "no";
    case SummarizationPolicy::Kind::kAll: return "all";
    case SummarizationPolicy::Kind::kAdaptive:
      return policy.threshold_words == 300 ? "adaptive"
                                           : "adaptive:" + std::to_string(policy.threshold_words);
  }
  return "?";
}

SummarizationPolicy parse_policy(std::string_view text) {
  if (text == "no" || text == "none") return SummarizationPolicy::none();
  if (text == "all") return SummarizationPolicy::all();
  if (text == "adaptive") return SummarizationPolicy::adaptive();
  if (text.starts_with("adaptive:")) {
    const auto num = text.substr(9);
    std::size_t threshold = 0;
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), threshold);
    if (ec == std::errc{} && ptr == num.data() + num.size() && threshold >= 1) {
      return SummarizationPolicy::adaptive(threshold);
    }
  }
  fail(ErrorKind::kInvalidConfig, "unknown summarization policy '" + std::string(text) +
                                      "' (expected no, all, adaptive or adaptive:<words>)");
}

std::size_t word_count(std::string_view text) { return split_whitespace(text).size(); }

bool should_summarize(const SummarizationPolicy& policy, std::string_view text) {
  switch (policy.kind) {
    case SummarizationPolicy::Kind::kNone: return false;
    case SummarizationPolicy::Kind::kAll: return true;
    case SummarizationPolicy::Kind::kAdaptive: return word_count(text) > policy.threshold_words;
  }
  return false;
}

void GenerationBackendConfig::validate() const {
  if (kind == Kind::kRemote) {
    if (endpoint.empty()) fail(ErrorKind::kInvalidConfig, "remote summarizer needs an endpoint");
    http::parse_endpoint(endpoint);
  }
  if (!(temperature >= 0.0)) fail(ErrorKind::kInvalidConfig, "temperature must be >= 0");
  if (max_in_flight == 0) fail(ErrorKind::kInvalidConfig, "max_in_flight must be >= 1");
  if (kind == Kind::kMock && mock_summary_words == 0) {
    fail(ErrorKind::kInvalidConfig, "mock summary length must be >= 1 word");
  }
}

RemoteGenerationBackend::RemoteGenerationBackend(std::string endpoint,
                                                 std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {}

std::string RemoteGenerationBackend::generate(std::string_view text, std::string_view prompt,
                                              double temperature) {
  const nlohmann::json request{
      {"text", text}, {"prompt", prompt}, {"temperature", temperature}};
  const auto body = http::post_json(http::parse_endpoint(endpoint_), "/v1/summarize", request, timeout_);
  if (!body.is_object() || !body.contains("summary") || !body["summary"].is_string()) {
    fail(ErrorKind::kProtocolError, "summarize response lacks a summary string");
  }
  if (body.contains("model") && body["model"].is_string()) {
    std::lock_guard lock(mu_);
    model_ = body["model"].get<std::string>();
  }
  return body["summary"].get<std::string>();
}

std::string RemoteGenerationBackend::model_id() {
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

MockGenerationBackend::MockGenerationBackend(std::size_t words) : words_(words) {}

std::string MockGenerationBackend::generate(std::string_view text, std::string_view,
                                            double) {
  std::string out;
  std::size_t n = 0;
  for (auto word : split_whitespace(text)) {
    if (n++ == words_) break;
    if (!out.empty()) out += ' ';
    out += word;
  }
  return out;
}

std::string MockGenerationBackend::model_id() { return "mock-lead-" + std::to_string(words_); }

std::unique_ptr<GenerationBackend> make_generation_backend(const GenerationBackendConfig& config) {
  config.validate();
  if (config.kind == GenerationBackendConfig::Kind::kMock) {
    return std::make_unique<MockGenerationBackend>(config.mock_summary_words);
  }
  return std::make_unique<RemoteGenerationBackend>(config.endpoint, config.timeout);
}

Summarizer::Summarizer(const GenerationBackendConfig& config)
    : Summarizer(make_generation_backend(config), config) {}

Summarizer::Summarizer(std::unique_ptr<GenerationBackend> backend,
                       const GenerationBackendConfig& config)
    : backend_(std::move(backend)),
      config_(config),
      in_flight_(static_cast<std::ptrdiff_t>(config.max_in_flight)) {
  config_.validate();
  if (!backend_) fail(ErrorKind::kInvalidConfig, "generation backend is null");
}

std::string Summarizer::summarize(std::string_view text) {
  if (trim(text).empty()) fail(ErrorKind::kEmptyText, "cannot summarize empty text");
  in_flight_.acquire();
  std::string summary;
  try {
    summary = backend_->generate(text, config_.prompt_template, config_.temperature);
  } catch (...) {
    in_flight_.release();
    throw;
  }
  in_flight_.release();
  if (trim(summary).empty()) fail(ErrorKind::kEmptyGeneration, "backend returned an empty summary");
  return summary;
}

PreparedQuery prepare_query(const SummarizationPolicy& policy, Summarizer* summarizer,
                            std::string_view text, bool fallback) {
  if (!should_summarize(policy, text)) return {std::string(text), false, std::nullopt};
  if (summarizer == nullptr) {
    fail(ErrorKind::kInvalidConfig,
         "summarization policy '" + to_string(policy) + "' needs a generation backend");
  }
  try {
    return {summarizer->summarize(text), true, std::nullopt};
  } catch (const Error& e) {
    const bool backend_failure = e.kind() == ErrorKind::kBackendUnavailable ||
                                 e.kind() == ErrorKind::kProtocolError ||
                                 e.kind() == ErrorKind::kEmptyGeneration;
    if (!fallback || !backend_failure) throw;
    return {std::string(text), false, std::string("summarization failed, using original text: ") + e.what()};
  }
}

}  // namespace occucode
