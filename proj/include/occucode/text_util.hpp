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

#include <string>
#include <string_view>
#include <vector>

namespace occucode {

// Splits UTF-8 text on Unicode White_Space code points (ASCII whitespace,
// U+0085, U+00A0, U+1680, U+2000..U+200A, U+2028, U+2029, U+202F, U+205F,
// U+3000). Returns maximal non-whitespace runs.
std::vector<std::string_view> split_whitespace(std::string_view text);

std::string ascii_lower(std::string_view text);

// Trims Unicode whitespace from both ends.
std::string_view trim(std::string_view text);

}  // namespace occucode
