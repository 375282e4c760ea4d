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


#include "occucode/taxonomy.hpp"

#include <fstream>

#include "csv.hpp"
#include "occucode/error.hpp"
#include "occucode/hashing.hpp"
#include "occucode/text_util.hpp"

namespace occucode {

Taxonomy::Taxonomy(std::vector<TaxonomyEntry> entries) {
  for (auto& e : entries) {
    const OccupationCode code = e.code;
    if (!entries_.emplace(code, std::move(e)).second) {
      fail(ErrorKind::kDuplicateCode, "duplicate code " + code.str());
    }
  }

  for (const auto& [code, entry] : entries_) {
    has_descendant_.emplace(code, false);
  }
  for (const auto& [code, entry] : entries_) {
    for (int lvl = code.level() - 1; lvl >= 1; --lvl) {
      auto it = has_descendant_.find(code.ancestor(lvl));
      if (it != has_descendant_.end()) it->second = true;
    }
    if (const auto parent = code.parent(); parent && !entries_.contains(*parent)) {
      warnings_.push_back("orphan code " + code.str() + ": parent " + parent->str() +
                          " not in taxonomy");
    }
  }

  std::string canonical;
  for (const auto& [code, entry] : entries_) {
    canonical += code.str();
    canonical += '\x1f';
    canonical += entry.preferred_label;
    canonical += '\x1f';
    for (const auto& alt : entry.alt_labels) {
      canonical += alt;
      canonical += '\x1e';
    }
    canonical += '\x1f';
    canonical += entry.description;
    canonical += '\x1d';
  }
  content_hash_ = xxh64(canonical, 0);
}

const TaxonomyEntry* Taxonomy::find(const OccupationCode& code) const {
  const auto it = entries_.find(code);
  return it == entries_.end() ? nullptr : &it->second;
}

bool Taxonomy::has_descendant(const OccupationCode& code) const {
  if (const auto it = has_descendant_.find(code); it != has_descendant_.end()) {
    return it->second;
  }
  const auto it = entries_.upper_bound(code);
  // Descendants of a code share its canonical text as a prefix, so they sort
  // right after it; a non-member code still needs a scan of that range.
  for (auto cur = it; cur != entries_.end() && cur->first.str().starts_with(code.digits());
       ++cur) {
    if (code.is_proper_ancestor_of(cur->first)) return true;
  }
  return false;
}

Taxonomy load_taxonomy(std::istream& in, const TaxonomyLoadOptions& options) {
  const auto records = csv::read_records(in);
  if (records.empty()) fail(ErrorKind::kMalformedRow, "taxonomy file is empty (missing header)");

  const std::vector<std::string> expected{"code", "preferred_label", "alt_labels", "description"};
  std::vector<std::string> header;
  for (const auto& f : records.front().fields) header.emplace_back(trim(f));
  if (header != expected) {
    fail(ErrorKind::kMalformedRow,
         "header must be code,preferred_label,alt_labels,description");
  }

  std::vector<TaxonomyEntry> entries;
  entries.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::string where = "line " + std::to_string(rec.line);
    if (rec.fields.size() != 4) {
      fail(ErrorKind::kMalformedRow, where + ": expected 4 fields, got " +
                                         std::to_string(rec.fields.size()));
    }
    std::optional<OccupationCode> code;
    try {
      code = OccupationCode::parse(trim(rec.fields[0]));
    } catch (const Error& e) {
      fail(ErrorKind::kMalformedRow, where + ": " + e.what());
    }
    const std::string label(trim(rec.fields[1]));
    if (label.empty()) fail(ErrorKind::kMalformedRow, where + ": missing preferred_label");

    TaxonomyEntry entry{*code, label, {}, std::string(trim(rec.fields[3]))};
    if (options.include_alt_labels) {
      std::string_view alts = rec.fields[2];
      while (!alts.empty()) {
        const auto bar = alts.find('|');
        const auto alt = trim(alts.substr(0, bar));
        if (!alt.empty()) entry.alt_labels.emplace_back(alt);
        if (bar == std::string_view::npos) break;
        alts.remove_prefix(bar + 1);
      }
    }
    entries.push_back(std::move(entry));
  }
  return Taxonomy(std::move(entries));
}

Taxonomy load_taxonomy_file(const std::filesystem::path& path,
                            const TaxonomyLoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIoFailure, "cannot open taxonomy file " + path.string());
  return load_taxonomy(in, options);
}

std::string entry_text(const TaxonomyEntry& entry) {
  std::string out;
  auto append = [&out](std::string_view field) {
    if (field.empty()) return;
    if (!out.empty()) out += kEntryTextSeparator;
    out += field;
  };
  append(entry.preferred_label);
  for (const auto& alt : entry.alt_labels) append(alt);
  append(entry.description);
  return out;
}

}  // namespace occucode
