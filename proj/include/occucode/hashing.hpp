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

#include <cstdint>
#include <span>
#include <string_view>

namespace occucode {

// XXH64 (xxHash, 64-bit variant). Bit-exact with the reference
// implementation for all inputs and seeds.
std::uint64_t xxh64(std::string_view data, std::uint64_t seed = 0) noexcept;

// CRC-32C (Castagnoli, reflected polynomial 0x82F63B78).
std::uint32_t crc32c(std::span<const std::uint8_t> data,
                     std::uint32_t crc = 0) noexcept;

}  // namespace occucode
