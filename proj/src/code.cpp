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


#include "occucode/code.hpp"

#include <charconv>

#include "occucode/error.hpp"

namespace occucode {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedCode: return "MalformedCode";
    case ErrorKind::kMalformedRow: return "MalformedRow";
    case ErrorKind::kDuplicateCode: return "DuplicateCode";
    case ErrorKind::kTooCoarse: return "TooCoarse";
    case ErrorKind::kEmptyCluster: return "EmptyCluster";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kZeroVector: return "ZeroVector";
    case ErrorKind::kInvalidVector: return "InvalidVector";
    case ErrorKind::kEmptyText: return "EmptyText";
    case ErrorKind::kBackendUnavailable: return "BackendUnavailable";
    case ErrorKind::kProtocolError: return "ProtocolError";
    case ErrorKind::kEmptyGeneration: return "EmptyGeneration";
    case ErrorKind::kIoFailure: return "IoFailure";
    case ErrorKind::kCorruptIndex: return "CorruptIndex";
    case ErrorKind::kMalformedRecord: return "MalformedRecord";
    case ErrorKind::kDuplicateId: return "DuplicateId";
    case ErrorKind::kConfigMismatch: return "ConfigMismatch";
    case ErrorKind::kInvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

[[noreturn]] void malformed(std::string_view text, std::string_view why) {
  fail(ErrorKind::kMalformedCode,
       "'" + std::string(text) + "': " + std::string(why));
}

}  // namespace

OccupationCode::OccupationCode(std::string digits,
                               std::vector<std::uint32_t> suffix)
    : digits_(std::move(digits)), suffix_(std::move(suffix)), text_(digits_) {
  for (auto seg : suffix_) {
    text_ += '.';
    text_ += std::to_string(seg);
  }
}

OccupationCode OccupationCode::parse(std::string_view text) {
  if (text.empty()) malformed(text, "empty code");

  const auto dot = text.find('.');
  const std::string_view head = text.substr(0, dot);
  if (head.empty()) malformed(text, "missing digit prefix");
  if (head.size() > 4) malformed(text, "more than 4 leading digits");
  for (char c : head) {
    if (!is_digit(c)) malformed(text, "non-digit in prefix");
  }

  std::vector<std::uint32_t> suffix;
  if (dot != std::string_view::npos) {
    if (head.size() != 4) malformed(text, "dotted code needs 4 digits");
    std::string_view rest = text.substr(dot + 1);
    while (true) {
      const auto next = rest.find('.');
      const std::string_view seg = rest.substr(0, next);
      if (seg.empty()) malformed(text, "empty suffix segment");
      if (seg.front() == '0') malformed(text, "suffix segment must be >= 1 without leading zeros");
      std::uint32_t value = 0;
      const auto [ptr, ec] = std::from_chars(seg.data(), seg.data() + seg.size(), value);
      if (ec != std::errc{} || ptr != seg.data() + seg.size()) {
        malformed(text, "bad suffix segment");
      }
      suffix.push_back(value);
      if (next == std::string_view::npos) break;
      rest = rest.substr(next + 1);
    }
  }
  return OccupationCode(std::string(head), std::move(suffix));
}

OccupationCode OccupationCode::ancestor(int level) const {
  if (level < 1 || level > this->level()) {
    fail(ErrorKind::kTooCoarse, "cannot take level-" + std::to_string(level) +
                                    " ancestor of " + text_);
  }
  if (level <= 4) {
    return OccupationCode(digits_.substr(0, static_cast<std::size_t>(level)), {});
  }
  return OccupationCode(
      digits_, std::vector<std::uint32_t>(suffix_.begin(), suffix_.begin() + (level - 4)));
}

std::optional<OccupationCode> OccupationCode::parent() const {
  if (level() <= 1) return std::nullopt;
  return ancestor(level() - 1);
}

bool OccupationCode::is_proper_ancestor_of(const OccupationCode& other) const {
  if (other.level() <= level()) return false;
  return other.ancestor(level()) == *this;
}

}  // namespace occucode
