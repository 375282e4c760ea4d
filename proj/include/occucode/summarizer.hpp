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
#include <semaphore>
#include <string>
#include <string_view>

namespace occucode {

struct SummarizationPolicy {
  enum class Kind { kNone, kAll, kAdaptive };

  Kind kind = Kind::kNone;
  std::size_t threshold_words = 300;  // kAdaptive only

  static SummarizationPolicy none() { return {Kind::kNone, 300}; }
  static SummarizationPolicy all() { return {Kind::kAll, 300}; }
  static SummarizationPolicy adaptive(std::size_t threshold = 300) {
    return {Kind::kAdaptive, threshold};
  }

  bool can_trigger() const noexcept { return kind != Kind::kNone; }

  friend bool operator==(const SummarizationPolicy&, const SummarizationPolicy&) = default;
};

// "no" | "all" | "adaptive" (default threshold) | "adaptive:<n>".
std::string to_string(const SummarizationPolicy& policy);
SummarizationPolicy parse_policy(std::string_view text);

// Number of maximal runs of non-whitespace (Unicode whitespace).
std::size_t word_count(std::string_view text);

// None -> false, All -> true, Adaptive(t) -> word_count(text) > t.
bool should_summarize(const SummarizationPolicy& policy, std::string_view text);

// Default generation prompt; the job posting text is appended by the
// generation server.
extern const std::string_view kDefaultSummaryPrompt;

struct GenerationBackendConfig {
  enum class Kind { kRemote, kMock };

  Kind kind = Kind::kRemote;
  std::string endpoint;
  double temperature = 0.0;
  std::chrono::milliseconds timeout{120000};
  std::string prompt_template{kDefaultSummaryPrompt};
  std::size_t max_in_flight = 4;
  std::size_t mock_summary_words = 40;  // kMock only

  void validate() const;
};

class GenerationBackend {
 public:
  virtual ~GenerationBackend() = default;
  virtual std::string generate(std::string_view text, std::string_view prompt,
                               double temperature) = 0;
  virtual std::string model_id() = 0;
};

// Client for POST {endpoint}/v1/summarize.
class RemoteGenerationBackend final : public GenerationBackend {
 public:
  RemoteGenerationBackend(std::string endpoint, std::chrono::milliseconds timeout);
  std::string generate(std::string_view text, std::string_view prompt,
                       double temperature) override;
  std::string model_id() override;

 private:
  std::string endpoint_;
  std::chrono::milliseconds timeout_;
  std::mutex mu_;
  std::string model_;
};

// Deterministic stand-in: the first `words` whitespace-separated words of
// the text, joined by single spaces. Ignores prompt and temperature.
class MockGenerationBackend final : public GenerationBackend {
 public:
  explicit MockGenerationBackend(std::size_t words);
  std::string generate(std::string_view text, std::string_view prompt,
                       double temperature) override;
  std::string model_id() override;

 private:
  std::size_t words_;
};

std::unique_ptr<GenerationBackend> make_generation_backend(const GenerationBackendConfig& config);

class Summarizer {
 public:
  explicit Summarizer(const GenerationBackendConfig& config);
  Summarizer(std::unique_ptr<GenerationBackend> backend, const GenerationBackendConfig& config);

  // Throws Error(kEmptyText | kBackendUnavailable | kEmptyGeneration |
  // kProtocolError).
  std::string summarize(std::string_view text);
  std::string model_id() { return backend_->model_id(); }

 private:
  std::unique_ptr<GenerationBackend> backend_;
  GenerationBackendConfig config_;
  std::counting_semaphore<> in_flight_;
};

struct PreparedQuery {
  std::string text;
  bool summarized = false;
  std::optional<std::string> warning;  // set when a failed summary fell back
};

// Returns the summary when the policy fires, else the text unchanged. With
// `fallback`, backend failures degrade to the original text plus a warning.
// Throws Error(kInvalidConfig) if the policy can fire but no summarizer is
// given.
PreparedQuery prepare_query(const SummarizationPolicy& policy, Summarizer* summarizer,
                            std::string_view text, bool fallback = true);

}  // namespace occucode
