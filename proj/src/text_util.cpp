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


#include "occucode/text_util.hpp"

#include <cstdint>

namespace occucode {
namespace {

// Byte length of the whitespace sequence starting at `pos`, or 0.
std::size_t whitespace_len(std::string_view s, std::size_t pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 == ' ' || (b0 >= 0x09 && b0 <= 0x0D)) return 1;
  const std::size_t rem = s.size() - pos;
  if (b0 == 0xC2 && rem >= 2) {
    const auto b1 = static_cast<unsigned char>(s[pos + 1]);
    if (b1 == 0x85 || b1 == 0xA0) return 2;
  } else if (b0 == 0xE1 && rem >= 3) {
    if (static_cast<unsigned char>(s[pos + 1]) == 0x9A &&
        static_cast<unsigned char>(s[pos + 2]) == 0x80) {
      return 3;  // U+1680
    }
  } else if (b0 == 0xE2 && rem >= 3) {
    const auto b1 = static_cast<unsigned char>(s[pos + 1]);
    const auto b2 = static_cast<unsigned char>(s[pos + 2]);
    if (b1 == 0x80 && (b2 <= 0x8A || b2 == 0xA8 || b2 == 0xA9 || b2 == 0xAF)) {
      return 3;  // U+2000..U+200A, U+2028, U+2029, U+202F
    }
    if (b1 == 0x81 && b2 == 0x9F) return 3;  // U+205F
  } else if (b0 == 0xE3 && rem >= 3) {
    if (static_cast<unsigned char>(s[pos + 1]) == 0x80 &&
        static_cast<unsigned char>(s[pos + 2]) == 0x80) {
      return 3;  // U+3000
    }
  }
  return 0;
}

}  // namespace

std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  std::size_t start = std::string_view::npos;
  while (pos < text.size()) {
    const std::size_t ws = whitespace_len(text, pos);
    if (ws > 0) {
      if (start != std::string_view::npos) {
        tokens.push_back(text.substr(start, pos - start));
        start = std::string_view::npos;
      }
      pos += ws;
    } else {
      if (start == std::string_view::npos) start = pos;
      ++pos;
    }
  }
  if (start != std::string_view::npos) tokens.push_back(text.substr(start));
  return tokens;
}

std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view trim(std::string_view text) {
  const auto tokens = split_whitespace(text);
  if (tokens.empty()) return {};
  const char* begin = tokens.front().data();
  const char* end = tokens.back().data() + tokens.back().size();
  return {begin, static_cast<std::size_t>(end - begin)};
}

}  // namespace occucode
