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
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "occucode/code.hpp"

namespace occucode {

struct TaxonomyEntry {
  OccupationCode code;
  std::string preferred_label;
  std::vector<std::string> alt_labels;
  std::string description;
};

struct TaxonomyLoadOptions {
  // Drop alternative labels at load time so they never reach entry_text().
  bool include_alt_labels = true;
};

// Immutable, validated occupation collection. Hierarchy is implied by the
// code structure; entries whose parent is missing load fine but are listed
// in warnings().
class Taxonomy {
 public:
  // Throws Error(kDuplicateCode).
  explicit Taxonomy(std::vector<TaxonomyEntry> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  const std::map<OccupationCode, TaxonomyEntry>& entries() const noexcept { return entries_; }
  const TaxonomyEntry* find(const OccupationCode& code) const;
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  // True when some other entry lies below `code` in the hierarchy.
  bool has_descendant(const OccupationCode& code) const;

  // XXH64 over the canonical serialization of every entry.
  std::uint64_t content_hash() const noexcept { return content_hash_; }

 private:
  std::map<OccupationCode, TaxonomyEntry> entries_;
  std::map<OccupationCode, bool> has_descendant_;
  std::vector<std::string> warnings_;
  std::uint64_t content_hash_ = 0;
};

// Reads the CSV taxonomy format (header
// `code,preferred_label,alt_labels,description`, alt labels '|'-separated).
// Throws Error(kMalformedRow | kDuplicateCode).
Taxonomy load_taxonomy(std::istream& in, const TaxonomyLoadOptions& options = {});
Taxonomy load_taxonomy_file(const std::filesystem::path& path,
                            const TaxonomyLoadOptions& options = {});

// The text embedded for an occupation: label, alt labels, description,
// joined by " ; " with empty fields skipped.
std::string entry_text(const TaxonomyEntry& entry);

inline constexpr std::string_view kEntryTextSeparator = " ; ";

}  // namespace occucode
