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

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace occucode {

// Hierarchical occupation code: 1-4 ISCO digits, optionally followed by
// dotted ESCO suffix segments ("4222.1.1"). Dotted codes always carry four
// digits, so level is len(digits) for plain codes and 4 + len(suffix)
// otherwise.
class OccupationCode {
 public:
  // Throws Error(kMalformedCode).
  static OccupationCode parse(std::string_view text);

  const std::string& digits() const noexcept { return digits_; }
  std::span<const std::uint32_t> suffix() const noexcept { return suffix_; }
  int level() const noexcept {
    return suffix_.empty() ? static_cast<int>(digits_.size())
                           : 4 + static_cast<int>(suffix_.size());
  }

  // Canonical text form.
  const std::string& str() const noexcept { return text_; }

  // Code at a coarser level along this code's hierarchy path. Requires
  // 1 <= level <= this->level().
  OccupationCode ancestor(int level) const;

  // Level-(n-1) ancestor; nullopt at level 1.
  std::optional<OccupationCode> parent() const;

  // True when `other` lies strictly below this code.
  bool is_proper_ancestor_of(const OccupationCode& other) const;

  // Ordering is by canonical text, which is also the ranking tie-break.
  friend bool operator==(const OccupationCode& a, const OccupationCode& b) {
    return a.text_ == b.text_;
  }
  friend std::strong_ordering operator<=>(const OccupationCode& a,
                                          const OccupationCode& b) {
    return a.text_ <=> b.text_;
  }

 private:
  OccupationCode(std::string digits, std::vector<std::uint32_t> suffix);

  std::string digits_;
  std::vector<std::uint32_t> suffix_;
  std::string text_;
};

}  // namespace occucode

template <>
struct std::hash<occucode::OccupationCode> {
  std::size_t operator()(const occucode::OccupationCode& c) const noexcept {
    return std::hash<std::string>{}(c.str());
  }
};
