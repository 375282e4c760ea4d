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


// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Runs entirely on the deterministic mock backends.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "occucode/cli.hpp"
#include "occucode/error.hpp"
#include "occucode/eval.hpp"
#include "occucode/granularity.hpp"
#include "occucode/pipeline.hpp"
#include "occucode/summarizer.hpp"
#include "occucode/vector_index.hpp"
#include "oracles.hpp"

namespace {

using namespace occucode;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

OccupationCode C(std::string_view s) { return OccupationCode::parse(s); }

// --- metrics -----------------------------------------------------------

std::vector<OccupationCode> random_list(std::mt19937_64& rng, std::size_t n) {
  std::vector<OccupationCode> pool;
  for (int i = 0; i < 40; ++i) pool.push_back(C(fmt::format("{}.{}", 4000 + i % 7, 1 + i)));
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(n), pool.end());
  return pool;
}

Outcome metric_oracle() {
  std::mt19937_64 rng(20260101);
  const auto t0 = Clock::now();
  std::size_t mismatches = 0;
  double worst_ndcg = 0.0;
  const std::size_t ks[] = {1, 5, 10};
  for (int i = 0; i < 500; ++i) {
    const auto ranked = random_list(rng, rng() % 21);
    const auto truth = C(fmt::format("{}.{}", 4000 + (rng() % 40) % 7, 1 + rng() % 40));
    const std::size_t k = ks[rng() % 3];
    if (hit_ratio_at_k(ranked, truth, k) != oracle::hit_ratio(ranked, truth, k)) ++mismatches;
    if (mrr_at_k(ranked, truth, k) != oracle::reciprocal_rank(ranked, truth, k)) ++mismatches;
    const double d = std::fabs(ndcg_at_k(ranked, truth, k) - oracle::ndcg(ranked, truth, k));
    worst_ndcg = std::max(worst_ndcg, d);
    if (d > 1e-12) ++mismatches;
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 1.0,
          fmt::format("500 triples, {} mismatches, max |dNDCG| {:.1e}, {:.3f} s", mismatches,
                      worst_ndcg, secs)};
}

Outcome k1_identity() {
  std::mt19937_64 rng(7);
  std::size_t bad = 0, hits = 0;
  for (int i = 0; i < 200; ++i) {
    const auto ranked = random_list(rng, rng() % 21);
    // Bias toward truths at rank 1 so both outcomes are exercised.
    const auto truth = (!ranked.empty() && rng() % 3 == 0) ? ranked.front()
                                                            : random_list(rng, 1).front();
    const double hr = hit_ratio_at_k(ranked, truth, 1);
    if (hr != mrr_at_k(ranked, truth, 1) || hr != ndcg_at_k(ranked, truth, 1)) ++bad;
    hits += hr == 1.0;
  }
  return {bad == 0 && hits > 0, fmt::format("200 cases ({} hits), {} violations", hits, bad)};
}

// --- search ------------------------------------------------------------

EmbeddingIndex random_index(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::vector<std::vector<double>> raw;
  std::vector<std::pair<OccupationCode, EmbeddingVector>> pairs;
  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  std::shuffle(ids.begin(), ids.end(), rng);
  for (std::size_t i = 0; i < n; ++i) {
    // Roughly 5% exact duplicates so tie-breaking is exercised.
    if (!raw.empty() && rng() % 20 == 0) {
      raw.push_back(raw[rng() % raw.size()]);
    } else {
      raw.push_back(oracle::random_vector(rng, dim));
    }
    pairs.emplace_back(C(fmt::format("{}.{}", 1000 + ids[i] % 9000, 1 + ids[i] / 9000)),
                       EmbeddingVector(raw.back()));
  }
  return build_index(std::move(pairs), {});
}

Outcome search_oracle() {
  std::mt19937_64 rng(99);
  const auto t0 = Clock::now();
  std::size_t bad = 0, queries = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng() % 1000;
    const auto index = random_index(rng, n, 32);
    for (int q = 0; q < 20; ++q) {
      std::vector<double> query;
      // Some queries are stored vectors, which hit the duplicate ties.
      if (q % 4 == 0) {
        const auto row = index.vector(rng() % n);
        query.assign(row.begin(), row.end());
      } else {
        query = oracle::random_vector(rng, 32);
      }
      const std::size_t k = 1 + rng() % (n + 5);
      const auto expect = oracle::exhaustive_search(index, query, k);
      if (search(index, query, k, ScanMode::kParallel).items != expect) ++bad;
      if (search(index, query, k, ScanMode::kSerial).items != expect) ++bad;
      ++queries;
    }
  }
  const double secs = seconds_since(t0);
  return {bad == 0 && secs < 5.0,
          fmt::format("50 indices x 20 queries ({} total), {} mismatches, {:.2f} s", queries, bad, secs)};
}

// --- self retrieval ------------------------------------------------------

Outcome self_retrieval() {
  const auto tax = oracle::synthetic_taxonomy(
      {.level3_groups = 20, .level4_per_group = 4, .leaves_per_level4 = 2, .words_per_entry = 6});
  const EmbeddingClient client(EmbeddingBackendConfig{.mock_dim = 1024});
  std::map<std::string, EmbeddingIndex> indices;
  indices.emplace("leaf", build_embedding_db(tax, client, GranularityTarget::kLeaf,
                                             MappingStrategy::kTruncation).index);
  indices.emplace("3", build_embedding_db(tax, client, GranularityTarget::kLevel3,
                                          MappingStrategy::kDirect).index);
  indices.emplace("4", build_embedding_db(tax, client, GranularityTarget::kLevel4,
                                          MappingStrategy::kDirect).index);
  std::size_t ok = 0;
  for (const auto& [code, entry] : tax.entries()) {
    const std::string key = tax.has_descendant(code) ? std::to_string(code.level()) : "leaf";
    const auto r = search(indices.at(key), client.embed_one(entry_text(entry)), 1);
    if (!r.empty() && r.items[0].code == code && r.items[0].score >= 1.0 - 1e-6) ++ok;
  }
  return {tax.size() >= 200 && ok == tax.size(),
          fmt::format("{}/{} entries at rank 1 with score >= 1-1e-6 (mock dim 1024)", ok, tax.size())};
}

// --- truncation algebra ------------------------------------------------

Outcome truncation_algebra() {
  std::mt19937_64 rng(1000);
  std::size_t bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto c = C(oracle::random_code_text(rng));
    const int top = std::min(4, c.level());
    for (int m = 1; m <= top; ++m) {
      const auto tm = truncate_code(c, m);
      if (c.digits().rfind(tm.digits(), 0) != 0 || tm.level() != m) ++bad;
      for (int n = 1; n <= m; ++n) {
        if (truncate_code(tm, n) != truncate_code(c, n)) ++bad;
      }
    }
    if (c.level() < 4) {
      try {
        truncate_code(c, c.level() + 1);
        ++bad;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kTooCoarse) ++bad;
      }
    }
  }

  std::size_t dedup_bad = 0;
  for (int t = 0; t < 200; ++t) {
    std::map<std::string, double> leaves;
    while (leaves.size() < 50) {
      leaves[fmt::format("{}{}.{}", 420 + rng() % 6, rng() % 4, 1 + rng() % 12)] = (rng() % 50) / 50.0;
    }
    RankedResult in;
    for (const auto& [code, score] : leaves) in.items.push_back({C(code), score});
    std::sort(in.items.begin(), in.items.end(), ranks_before);
    for (int level : {3, 4}) {
      const auto out = dedup_truncated(in, level, 10);
      const auto expect = oracle::group_by_prefix_max(in.items, level, 10);
      bool same = out.size() == expect.size();
      for (std::size_t i = 0; same && i < out.size(); ++i) {
        same = out.items[i].code.str() == expect[i].first && out.items[i].score == expect[i].second;
      }
      if (!same) ++dedup_bad;
    }
  }
  return {bad == 0 && dedup_bad == 0,
          fmt::format("1000 codes, {} algebra violations; 400 dedup cases, {} oracle mismatches", bad,
                      dedup_bad)};
}

// --- strategy consistency ------------------------------------------------

Outcome strategy_consistency() {
  const auto tax = oracle::synthetic_taxonomy(
      {.level3_groups = 12, .level4_per_group = 5, .leaves_per_level4 = 1, .seed = 3});
  for (const auto& code : target_codes(tax, GranularityTarget::kLevel4)) {
    std::size_t leaves = 0;
    for (const auto& leaf : target_codes(tax, GranularityTarget::kLeaf)) {
      leaves += truncate_code(leaf, 4) == code;
    }
    if (leaves != 1) return {false, "generated taxonomy is not one-leaf-per-level-4"};
  }
  const EmbeddingClient client(EmbeddingBackendConfig{.mock_dim = 64});
  const auto trunc = build_embedding_db(tax, client, GranularityTarget::kLevel4,
                                        MappingStrategy::kTruncation).index;
  const auto clus = build_embedding_db(tax, client, GranularityTarget::kLevel4,
                                       MappingStrategy::kClustering).index;
  PipelineConfig a;
  a.target = GranularityTarget::kLevel4;
  a.strategy = MappingStrategy::kTruncation;
  PipelineConfig b = a;
  b.strategy = MappingStrategy::kClustering;

  std::mt19937_64 rng(50);
  std::size_t bad = 0;
  for (int q = 0; q < 50; ++q) {
    std::string doc;
    for (int w = 0; w < 8; ++w) doc += oracle::token(rng() % 600) + " ";
    if (code_document(a, trunc, client, nullptr, doc).results !=
        code_document(b, clus, client, nullptr, doc).results) {
      ++bad;
    }
  }
  return {bad == 0, fmt::format("50 mock queries at level 4, {} differing rankings", bad)};
}

// --- adaptive boundary ---------------------------------------------------

Outcome adaptive_boundary() {
  auto doc = [](std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s += (i ? " " : "") + oracle::token(i);
    return s;
  };
  const auto policy = SummarizationPolicy::adaptive(300);
  const bool at = should_summarize(policy, doc(300));
  const bool above = should_summarize(policy, doc(301));
  return {!at && above && word_count(doc(300)) == 300,
          fmt::format("300 words -> {}, 301 words -> {}", at, above)};
}

// --- golden run ------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome golden_run() {
  const std::string data = OCCUCODE_TEST_DATA_DIR "/golden";
  const auto out = std::filesystem::temp_directory_path() / "occucode_acceptance_report.csv";
  std::filesystem::remove(out);
  const auto t0 = Clock::now();
  std::istringstream in;
  std::ostringstream sink, err;
  const int code = run_cli({"occucode", "evaluate", "--taxonomy", data + "/taxonomy.csv", "--dataset",
                            data + "/dataset.jsonl", "--out", out.string()},
                           in, sink, err);
  const double secs = seconds_since(t0);
  const std::string got = slurp(out);
  const std::string expect = slurp(data + "/report.csv");
  std::filesystem::remove(out);
  const auto rows = std::count(expect.begin(), expect.end(), '\n') - 1;
  return {code == 0 && got == expect && secs < 10.0,
          fmt::format("exit {}, {} rows, {} byte-for-byte, {:.2f} s", code, rows,
                      got == expect ? "identical" : "DIFFERENT", secs)};
}

// --- persistence -------------------------------------------------------------

std::string serialize(const EmbeddingIndex& index) {
  std::ostringstream out;
  save_index(index, out);
  return out.str();
}

Outcome persistence() {
  std::mt19937_64 rng(4242);
  std::vector<std::pair<OccupationCode, EmbeddingVector>> pairs;
  std::map<std::string, std::string> labels;
  for (std::size_t i = 0; i < 1000; ++i) {
    const auto code = fmt::format("{}.{}", 1000 + i, 1 + i % 7);
    pairs.emplace_back(C(code), EmbeddingVector(oracle::random_vector(rng, 2)));
    labels[code] = "occupation " + std::to_string(i);
  }
  IndexMetadata meta{.taxonomy_hash = rng(), .backend_model = "mock-bow-xxh64-d2",
                     .strategy = MappingStrategy::kTruncation, .target = GranularityTarget::kLeaf,
                     .created_at = 1760000000, .labels = labels};
  const auto index = build_index(std::move(pairs), meta);
  const std::string bytes = serialize(index);

  std::istringstream in(bytes);
  const auto back = load_index(in);
  const bool identical =
      back == index && back.data().size() == index.data().size() &&
      std::memcmp(back.data().data(), index.data().data(), index.data().size() * sizeof(double)) == 0 &&
      serialize(back) == bytes;

  std::size_t undetected = 0;
  std::string corrupt = bytes;
  for (std::size_t pos = 0; pos < corrupt.size(); ++pos) {
    corrupt[pos] = static_cast<char>(corrupt[pos] ^ 0x5A);
    try {
      std::istringstream cin(corrupt);
      load_index(cin);
      ++undetected;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kCorruptIndex) ++undetected;
    }
    corrupt[pos] = bytes[pos];
  }
  return {identical && undetected == 0,
          fmt::format("1000 records round-trip {}; {} single-byte corruptions, {} undetected",
                      identical ? "bit-identical" : "DIFFERENT", bytes.size(), undetected)};
}

// --- performance ---------------------------------------------------------------

Outcome performance() {
  std::mt19937_64 rng(3000);
  const std::size_t n = 3000, dim = 4096;
  std::vector<std::pair<OccupationCode, EmbeddingVector>> pairs;
  pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    pairs.emplace_back(C(fmt::format("{}.{}", 1000 + i, 1)), EmbeddingVector(oracle::random_vector(rng, dim)));
  }
  const auto index = build_index(std::move(pairs), {});
  const auto query = EmbeddingVector(oracle::random_vector(rng, dim));

  std::vector<double> ms;
  for (int rep = 0; rep < 7; ++rep) {
    const auto t0 = Clock::now();
    const auto r = search(index, query, 10, ScanMode::kSerial);
    ms.push_back(seconds_since(t0) * 1e3);
    if (r.size() != 10) return {false, "short result"};
  }
  std::sort(ms.begin(), ms.end());
  const double median = ms[ms.size() / 2];
  return {median < 50.0, fmt::format("3000 x 4096 serial scan, median {:.2f} ms of 7 (max {:.2f} ms)",
                                     median, ms.back())};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"metric-oracle-equivalence", metric_oracle},
      {"k1-identity", k1_identity},
      {"search-oracle", search_oracle},
      {"self-retrieval", self_retrieval},
      {"truncation-algebra", truncation_algebra},
      {"strategy-consistency", strategy_consistency},
      {"adaptive-boundary", adaptive_boundary},
      {"golden-run", golden_run},
      {"index-persistence", persistence},
      {"search-performance", performance},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << fmt::format("{}  {:<27} {}\n", o.pass ? "PASS" : "FAIL", name, o.detail) << std::flush;
    failed += !o.pass;
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
