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


#include <gtest/gtest.h>

#include <random>

#include "occucode/error.hpp"
#include "occucode/pipeline.hpp"
#include "oracles.hpp"

namespace occucode {
namespace {

OccupationCode C(std::string_view s) { return OccupationCode::parse(s); }

template <typename F>
ErrorKind error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::kInvalidConfig;
}

Taxonomy toy() {
  return Taxonomy({{C("422"), "client information workers", {}, "provide information"},
                   {C("4222"), "contact centre information clerks", {"call centre agent"}, ""},
                   {C("4222.1"), "live chat operator", {}, "answers chat questions"},
                   {C("4222.2"), "contact centre supervisor", {}, "leads phone agents"}});
}

EmbeddingClient mock_client(std::size_t dim = 64) {
  return EmbeddingClient(EmbeddingBackendConfig{.mock_dim = dim});
}

std::vector<std::string> index_codes(const EmbeddingIndex& index) {
  std::vector<std::string> out;
  for (const auto& c : index.codes()) out.push_back(c.str());
  std::sort(out.begin(), out.end());
  return out;
}

// Mock backend whose vectors are scaled by a positive constant.
class ScaledMock final : public EmbeddingBackend {
 public:
  ScaledMock(std::size_t dim, double scale) : inner_(dim), scale_(scale) {}
  std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) override {
    std::vector<EmbeddingVector> out;
    for (auto& v : inner_.embed_batch(texts)) {
      std::vector<double> s(v.values().begin(), v.values().end());
      for (double& x : s) x *= scale_;
      out.emplace_back(std::move(s));
    }
    return out;
  }
  std::string model_id() override { return inner_.model_id(); }

 private:
  MockEmbeddingBackend inner_;
  double scale_;
};

TEST(BuildEmbeddingDb, ClusteringLevel4IsLeafMean) {
  const auto tax = toy();
  const auto client = mock_client();
  const auto built = build_embedding_db(tax, client, GranularityTarget::kLevel4,
                                        MappingStrategy::kClustering);
  ASSERT_EQ(index_codes(built.index), std::vector<std::string>{"4222"});
  const auto a = mock_embed(entry_text(*tax.find(C("4222.1"))), 64);
  const auto b = mock_embed(entry_text(*tax.find(C("4222.2"))), 64);
  std::vector<double> mean = oracle::componentwise_mean(
      {{a.values().begin(), a.values().end()}, {b.values().begin(), b.values().end()}});
  const double norm = std::sqrt(oracle::compensated_dot(mean, mean));
  const auto stored = built.index.vector(0);
  for (std::size_t j = 0; j < 64; ++j) EXPECT_NEAR(stored[j], mean[j] / norm, 1e-12);
  EXPECT_TRUE(built.report.skipped_clusters.empty());
}

TEST(BuildEmbeddingDb, CandidateSets) {
  const auto tax = toy();
  const auto client = mock_client();
  EXPECT_EQ(index_codes(build_embedding_db(tax, client, GranularityTarget::kLevel3,
                                           MappingStrategy::kDirect).index),
            std::vector<std::string>{"422"});
  for (auto target : {GranularityTarget::kLevel3, GranularityTarget::kLevel4,
                      GranularityTarget::kLeaf}) {
    const auto built = build_embedding_db(tax, client, target, MappingStrategy::kTruncation);
    EXPECT_EQ(index_codes(built.index), (std::vector<std::string>{"4222.1", "4222.2"}));
    EXPECT_EQ(built.report.records, 2u);
  }
  const auto direct = build_embedding_db(tax, client, GranularityTarget::kLevel4,
                                         MappingStrategy::kDirect);
  EXPECT_EQ(direct.index.vector(0)[0],
            mock_embed(entry_text(*tax.find(C("4222"))), 64)[0]);
}

TEST(BuildEmbeddingDb, MetadataRecordsConfiguration) {
  const auto tax = toy();
  const auto client = mock_client(32);
  const auto built = build_embedding_db(tax, client, GranularityTarget::kLevel3,
                                        MappingStrategy::kClustering, {.created_at = 1234});
  const auto& meta = built.index.metadata();
  EXPECT_EQ(meta.strategy, MappingStrategy::kClustering);
  EXPECT_EQ(meta.target, GranularityTarget::kLevel3);
  EXPECT_EQ(meta.backend_model, "mock-bow-xxh64-d32");
  EXPECT_EQ(meta.taxonomy_hash, tax.content_hash());
  EXPECT_EQ(meta.created_at, 1234);
  EXPECT_EQ(built.index.label(C("422")), "client information workers");
  EXPECT_EQ(built.report.model, "mock-bow-xxh64-d32");

  const auto leaf = build_embedding_db(tax, client, GranularityTarget::kLeaf,
                                       MappingStrategy::kDirect);
  EXPECT_EQ(leaf.index.metadata().strategy, MappingStrategy::kTruncation);
}

TEST(BuildEmbeddingDb, ChildlessCoarseCodeIsItsOwnCluster) {
  const Taxonomy tax({{C("422"), "a", {}, ""}, {C("4222"), "b", {}, ""}, {C("4223"), "c", {}, ""},
                      {C("4223.1"), "d", {}, ""}});
  const auto built = build_embedding_db(tax, mock_client(), GranularityTarget::kLevel4,
                                        MappingStrategy::kClustering);
  EXPECT_EQ(index_codes(built.index), (std::vector<std::string>{"4222", "4223"}));
  EXPECT_TRUE(built.report.skipped_clusters.empty());
}

PipelineConfig config_for(GranularityTarget target, MappingStrategy strategy, std::size_t k = 10) {
  PipelineConfig c;
  c.target = target;
  c.strategy = strategy;
  c.top_k = k;
  return c;
}

TEST(CodeDocument, SelfRetrievalLeafAndTruncated) {
  const auto tax = toy();
  const auto client = mock_client();
  const auto text = entry_text(*tax.find(C("4222.1")));

  const auto leaf_index = build_embedding_db(tax, client, GranularityTarget::kLeaf,
                                             MappingStrategy::kTruncation).index;
  const auto leaf = code_document(config_for(GranularityTarget::kLeaf, MappingStrategy::kTruncation),
                                  leaf_index, client, nullptr, text);
  EXPECT_EQ(leaf.results.items.at(0).code, C("4222.1"));
  EXPECT_NEAR(leaf.results.items.at(0).score, 1.0, 1e-6);
  EXPECT_EQ(leaf.prepared_text, text);
  EXPECT_FALSE(leaf.summarized);

  const auto trunc_index = build_embedding_db(tax, client, GranularityTarget::kLevel4,
                                              MappingStrategy::kTruncation).index;
  const auto l4 = code_document(config_for(GranularityTarget::kLevel4, MappingStrategy::kTruncation),
                                trunc_index, client, nullptr, text);
  ASSERT_EQ(l4.results.size(), 1u);
  EXPECT_EQ(l4.results.items[0].code, C("4222"));
}

TEST(CodeDocument, TruncationMatchesExhaustiveGroupOracle) {
  const auto tax = oracle::synthetic_taxonomy(
      {.level3_groups = 7, .level4_per_group = 2, .leaves_per_level4 = 1, .words_per_entry = 3});
  ASSERT_GE(target_codes(tax, GranularityTarget::kLeaf).size(), 14u);
  const auto client = mock_client(16);
  const auto index = build_embedding_db(tax, client, GranularityTarget::kLevel3,
                                        MappingStrategy::kTruncation).index;
  std::mt19937_64 rng(17);
  for (std::size_t expansion : {1u, 5u}) {
    auto cfg = config_for(GranularityTarget::kLevel3, MappingStrategy::kTruncation, 5);
    cfg.truncation_expansion = expansion;
    for (int q = 0; q < 40; ++q) {
      std::string doc;
      for (int w = 0; w < 6; ++w) doc += oracle::token(rng() % 60) + " ";
      const auto out = code_document(cfg, index, client, nullptr, doc).results;
      const auto all = oracle::exhaustive_search(index, client.embed_one(doc).values(), index.size());
      const auto expect = oracle::group_by_prefix_max(all, 3, 5);
      ASSERT_EQ(out.size(), expect.size());
      for (std::size_t i = 0; i < out.size(); ++i) {
        EXPECT_EQ(out.items[i].code.str(), expect[i].first);
        EXPECT_EQ(out.items[i].score, expect[i].second);
      }
    }
  }
}

TEST(RankQuery, WidensWhenExpansionYieldsTooFewPrefixes) {
  // Six near-identical leaves under 4222 dominate every query for "alpha".
  std::vector<std::pair<OccupationCode, EmbeddingVector>> pairs;
  for (int i = 1; i <= 6; ++i) {
    pairs.emplace_back(C("4222." + std::to_string(i)), EmbeddingVector({1.0, 0.01 * i, 0.0}));
  }
  pairs.emplace_back(C("5120.1"), EmbeddingVector({0.2, 1.0, 0.0}));
  pairs.emplace_back(C("9333.1"), EmbeddingVector({0.1, 0.0, 1.0}));
  const auto index = build_index(std::move(pairs), {.target = GranularityTarget::kLevel4});
  auto cfg = config_for(GranularityTarget::kLevel4, MappingStrategy::kTruncation, 3);
  cfg.truncation_expansion = 2;
  const auto r = rank_query(cfg, index, EmbeddingVector({1.0, 0.0, 0.0}));
  EXPECT_EQ(r.codes(), (std::vector<OccupationCode>{C("4222"), C("5120"), C("9333")}));
}

TEST(RankQuery, NeverExceedsTopK) {
  std::mt19937_64 rng(3);
  const auto tax = oracle::synthetic_taxonomy({.level3_groups = 5, .vary_leaf_count = true});
  const auto client = mock_client(32);
  for (auto target : {GranularityTarget::kLevel3, GranularityTarget::kLevel4, GranularityTarget::kLeaf}) {
    for (auto strategy : {MappingStrategy::kTruncation, MappingStrategy::kDirect,
                          MappingStrategy::kClustering}) {
      const auto index = build_embedding_db(tax, client, target, strategy).index;
      for (std::size_t k : {1u, 3u, 10u, 1000u}) {
        const auto q = EmbeddingVector(oracle::random_vector(rng, 32));
        const auto r = rank_query(config_for(target, strategy, k), index, q);
        EXPECT_LE(r.size(), k);
        for (std::size_t i = 1; i < r.size(); ++i) EXPECT_TRUE(ranks_before(r.items[i - 1], r.items[i]));
      }
    }
  }
}

TEST(CodeDocumentProperty, Deterministic) {
  const auto tax = oracle::synthetic_taxonomy({.level3_groups = 6});
  const auto client = mock_client(48);
  const auto index = build_embedding_db(tax, client, GranularityTarget::kLevel3,
                                        MappingStrategy::kTruncation).index;
  const auto cfg = config_for(GranularityTarget::kLevel3, MappingStrategy::kTruncation, 5);
  for (std::size_t i = 0; i < 20; ++i) {
    const std::string doc = oracle::token(i) + " " + oracle::token(i * 3) + " " + oracle::token(i * 5);
    const auto a = code_document(cfg, index, client, nullptr, doc);
    const auto b = code_document(cfg, index, client, nullptr, doc);
    EXPECT_EQ(a.results, b.results);
  }
}

TEST(CodeDocumentProperty, StrategyConsistencyWithSingletonLeaves) {
  const auto tax = oracle::synthetic_taxonomy(
      {.level3_groups = 6, .level4_per_group = 4, .leaves_per_level4 = 1, .seed = 5});
  const auto client = mock_client(64);
  const auto trunc = build_embedding_db(tax, client, GranularityTarget::kLevel4,
                                        MappingStrategy::kTruncation).index;
  const auto clus = build_embedding_db(tax, client, GranularityTarget::kLevel4,
                                       MappingStrategy::kClustering).index;
  std::mt19937_64 rng(19);
  for (int q = 0; q < 30; ++q) {
    std::string doc;
    for (int w = 0; w < 5; ++w) doc += oracle::token(rng() % 400) + " ";
    const auto a = code_document(config_for(GranularityTarget::kLevel4, MappingStrategy::kTruncation, 10),
                                 trunc, client, nullptr, doc);
    const auto b = code_document(config_for(GranularityTarget::kLevel4, MappingStrategy::kClustering, 10),
                                 clus, client, nullptr, doc);
    EXPECT_EQ(a.results, b.results) << doc;
  }
}

TEST(CodeDocumentProperty, BackendScaleInvariance) {
  const auto tax = oracle::synthetic_taxonomy({.level3_groups = 5, .seed = 9});
  for (auto strategy : {MappingStrategy::kTruncation, MappingStrategy::kDirect,
                        MappingStrategy::kClustering}) {
    const auto cfg = config_for(GranularityTarget::kLevel3, strategy, 5);
    EmbeddingClient plain(std::make_unique<ScaledMock>(64, 1.0), {});
    EmbeddingClient scaled(std::make_unique<ScaledMock>(64, 37.5), {});
    const auto i1 = build_embedding_db(tax, plain, cfg.target, strategy).index;
    const auto i2 = build_embedding_db(tax, scaled, cfg.target, strategy).index;
    for (std::size_t i = 0; i < 20; ++i) {
      const std::string doc = oracle::token(i * 11) + " " + oracle::token(i * 13 + 1);
      EXPECT_EQ(code_document(cfg, i1, plain, nullptr, doc).results.codes(),
                code_document(cfg, i2, scaled, nullptr, doc).results.codes());
    }
  }
}

TEST(CheckIndexMatches, Mismatches) {
  const auto tax = toy();
  const auto client = mock_client();
  const auto l4 = build_embedding_db(tax, client, GranularityTarget::kLevel4,
                                     MappingStrategy::kDirect).index;
  const auto model = client.model_id();
  EXPECT_NO_THROW(check_index_matches(config_for(GranularityTarget::kLevel4, MappingStrategy::kDirect),
                                      l4, model));
  EXPECT_EQ(error_of([&] {
              check_index_matches(config_for(GranularityTarget::kLevel3, MappingStrategy::kDirect), l4, model);
            }),
            ErrorKind::kConfigMismatch);
  EXPECT_EQ(error_of([&] {
              check_index_matches(config_for(GranularityTarget::kLevel4, MappingStrategy::kClustering), l4,
                                  model);
            }),
            ErrorKind::kConfigMismatch);
  EXPECT_EQ(error_of([&] {
              check_index_matches(config_for(GranularityTarget::kLevel4, MappingStrategy::kDirect), l4,
                                  "mock-bow-xxh64-d8");
            }),
            ErrorKind::kConfigMismatch);

  const auto leaf = build_embedding_db(tax, client, GranularityTarget::kLeaf,
                                       MappingStrategy::kTruncation).index;
  EXPECT_NO_THROW(check_index_matches(config_for(GranularityTarget::kLeaf, MappingStrategy::kClustering),
                                      leaf, model));
  EXPECT_EQ(error_of([&] {
              code_document(config_for(GranularityTarget::kLeaf, MappingStrategy::kTruncation), leaf,
                            mock_client(8), nullptr, "chef");
            }),
            ErrorKind::kConfigMismatch);
}

TEST(OccupationCoder, SummarizesAndOverridesTopK) {
  const auto tax = oracle::synthetic_taxonomy({.level3_groups = 4});
  auto client = std::make_unique<EmbeddingClient>(EmbeddingBackendConfig{});
  auto index = build_embedding_db(tax, *client, GranularityTarget::kLeaf,
                                  MappingStrategy::kTruncation).index;
  GenerationBackendConfig gen;
  gen.kind = GenerationBackendConfig::Kind::kMock;
  gen.mock_summary_words = 3;
  PipelineConfig cfg;
  cfg.policy = SummarizationPolicy::adaptive(5);
  OccupationCoder coder(cfg, index, std::move(client), std::make_unique<Summarizer>(gen));

  const auto short_doc = coder.code("one two three four five", 2);
  EXPECT_FALSE(short_doc.summarized);
  EXPECT_EQ(short_doc.results.size(), 2u);
  const auto long_doc = coder.code("one two three four five six");
  EXPECT_TRUE(long_doc.summarized);
  EXPECT_EQ(long_doc.prepared_text, "one two three");
  EXPECT_EQ(long_doc.results.size(), 10u);
  EXPECT_GE(long_doc.timing.search_ms, 0.0);

  EXPECT_EQ(error_of([&] {
              OccupationCoder(cfg, index, std::make_unique<EmbeddingClient>(EmbeddingBackendConfig{}),
                              nullptr);
            }),
            ErrorKind::kInvalidConfig);
  PipelineConfig zero;
  zero.top_k = 0;
  EXPECT_EQ(error_of([&] {
              OccupationCoder(zero, index, std::make_unique<EmbeddingClient>(EmbeddingBackendConfig{}),
                              nullptr);
            }),
            ErrorKind::kInvalidConfig);
}

}  // namespace
}  // namespace occucode
