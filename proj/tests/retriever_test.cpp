// Copyright 2026 The SiteQA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "siteqa/retriever.hpp"
#include "support.hpp"

namespace siteqa {
namespace {

Paragraph para(std::string id, std::string text) {
  Paragraph p;
  p.para_id = std::move(id);
  p.doc_id = "d";
  p.text = std::move(text);
  return p;
}

TEST(IndexTest, SingleParagraphStatistics) {
  std::vector<Paragraph> ps{para("a", "rome is a city")};
  auto idx = build_index(ps);
  EXPECT_EQ(idx.num_paragraphs(), 1u);
  EXPECT_DOUBLE_EQ(idx.avgdl(), 4.0);
}

TEST(IndexTest, AverageLength) {
  std::vector<Paragraph> ps{para("a", "rome city"), para("b", "one two three four five six")};
  EXPECT_DOUBLE_EQ(build_index(ps).avgdl(), 4.0);
}

TEST(IndexTest, StopwordsAreIndexed) {
  std::vector<Paragraph> ps{para("a", "the capital of italy")};
  auto idx = build_index(ps);
  EXPECT_EQ(idx.document_frequency("the"), 1u);
  EXPECT_EQ(idx.document_frequency("capit"), 1u);
}

TEST(IndexTest, RejectsDuplicatesAndEmpty) {
  std::vector<Paragraph> dup{para("a", "x"), para("a", "y")};
  try {
    build_index(dup);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("a"), std::string::npos);
  }
  EXPECT_THROW(build_index(std::vector<Paragraph>{}), ValidationError);
}

TEST(IndexTest, TitleTokensCountTowardsLength) {
  auto p = para("a", "rome city");
  p.title = "Rome";
  std::vector<Paragraph> ps{p};
  auto idx = build_index(ps);
  EXPECT_DOUBLE_EQ(idx.avgdl(), 3.0);
  EXPECT_EQ(idx.postings("rome")[0].tf, 2u);
}

// Postings over the fixture corpus equal naive per-paragraph counting.
TEST(IndexTest, FixturePostingsMatchBruteForce) {
  const auto& data = testing::fixture_text();
  const auto& paras = data.corpus.paragraphs();
  std::map<std::string, std::map<std::string, std::uint32_t>> expected;
  for (const auto& p : paras)
    for (const auto& s : oracle::doc_stems(p)) ++expected[s][p.para_id];
  ASSERT_EQ(data.index.postings().size(), expected.size());
  for (const auto& [stem, by_para] : expected) {
    auto list = data.index.postings(stem);
    ASSERT_EQ(list.size(), by_para.size()) << stem;
    for (const auto& posting : list) {
      const auto& id = data.index.para_ids()[posting.doc];
      EXPECT_EQ(posting.tf, by_para.at(id)) << stem << " in " << id;
    }
  }
  for (std::size_t d = 0; d < paras.size(); ++d)
    EXPECT_EQ(data.index.doc_lengths()[d], oracle::doc_stems(paras[d]).size());
}

TEST(Bm25Test, HandEvaluatedScore) {
  // N=3, df("rome")=1, tf=1, dl=avgdl.
  std::vector<Paragraph> ps{para("a", "rome x"), para("b", "paris y"), para("c", "berlin z")};
  auto idx = build_index(ps);
  std::vector<std::string> q{"rome"};
  EXPECT_NEAR(bm25_score(q, "a", idx), std::log(1.0 + 2.5 / 1.5), 1e-12);
  EXPECT_NEAR(bm25_score(q, "a", idx), 0.9808, 1e-4);
  EXPECT_EQ(bm25_score(q, "b", idx), 0.0);
  std::vector<std::string> dup{"rome", "rome"};
  EXPECT_EQ(bm25_score(dup, "a", idx), bm25_score(q, "a", idx));
  EXPECT_THROW(bm25_score(q, "zzz", idx), ValidationError);
}

TEST(Bm25Test, IdfAlwaysPositive) {
  std::vector<Paragraph> ps;
  for (int i = 0; i < 10; ++i) ps.push_back(para("p" + std::to_string(i), "w"));
  auto idx = build_index(ps);
  for (std::size_t df = 0; df <= idx.num_paragraphs(); ++df) EXPECT_GT(idx.idf(df), 0.0);
}

// Raising tf of a query stem in one paragraph never lowers its score when
// the other statistics stay fixed.
TEST(Bm25Test, MonotoneInTermFrequency) {
  std::vector<Paragraph> ps{para("a", "rome city of art"), para("b", "paris city"), para("c", "berlin")};
  auto idx = build_index(ps);
  for (std::uint32_t tf = 1; tf < 20; ++tf)
    EXPECT_LE(idx.term_weight(tf, 4, 1), idx.term_weight(tf + 1, 4, 1));
}

TEST(RetrieveTest, EdgeCases) {
  const auto& idx = testing::fixture_text().index;
  EXPECT_TRUE(retrieve("what is the", 29, idx).empty());
  EXPECT_TRUE(retrieve("zzzqqq", 29, idx).empty());
  EXPECT_THROW(retrieve("rome", 0, idx), ValidationError);
  auto top = retrieve("capital of Italy", 1, idx);
  ASSERT_EQ(top.size(), 1u);
  auto all = oracle::bm25_rank(testing::fixture_text().corpus.paragraphs(), "capital of Italy", 1);
  EXPECT_EQ(top[0].para_id, all[0].para_id);
}

TEST(RetrieveTest, FixtureQuestionMatchesExhaustiveScoring) {
  const auto& data = testing::fixture_text();
  const std::string q = "Where is the web conference taking place";
  auto got = retrieve(q, 29, data.index);
  auto want = oracle::bm25_rank(data.corpus.paragraphs(), q, 29);
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].para_id, want[i].para_id);
    EXPECT_NEAR(got[i].score, want[i].score, 1e-9);
    EXPECT_EQ(got[i].rank, i + 1);
  }
  EXPECT_EQ(got[0].para_id, "thewebconference2022#0");
}

TEST(RetrieveTest, TiesBrokenByParagraphId) {
  std::vector<Paragraph> ps{para("b", "rome"), para("a", "rome"), para("c", "paris")};
  auto got = retrieve("rome", 5, build_index(ps));
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0].para_id, "a");
  EXPECT_EQ(got[1].para_id, "b");
  EXPECT_EQ(got[0].score, got[1].score);
}

TEST(RetrieveTest, RandomCorporaMatchOracle) {
  std::mt19937 rng(11);
  const std::vector<std::string> vocab = {"rome", "city", "capital", "italy", "the", "of", "web", "conference",
                                          "lyon", "paris", "river", "museum", "film", "data", "graph"};
  for (int iter = 0; iter < 40; ++iter) {
    std::vector<Paragraph> ps;
    int n = 1 + rng() % 60;
    for (int i = 0; i < n; ++i) {
      std::string text;
      int len = 1 + rng() % 25;
      for (int w = 0; w < len; ++w) text += vocab[rng() % vocab.size()] + " ";
      ps.push_back(para("p" + std::to_string(rng() % 1000) + "_" + std::to_string(i), text));
    }
    auto idx = build_index(ps, {1.2, 0.75});
    for (int qi = 0; qi < 5; ++qi) {
      std::string q;
      for (int w = 0; w < 1 + static_cast<int>(rng() % 4); ++w) q += vocab[rng() % vocab.size()] + " ";
      std::size_t k = 1 + rng() % 30;
      auto got = retrieve(q, k, idx);
      auto want = oracle::bm25_rank(ps, q, k, {1.2, 0.75});
      ASSERT_EQ(got.size(), want.size()) << q;
      for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_EQ(got[i].para_id, want[i].para_id) << q;
        EXPECT_NEAR(got[i].score, want[i].score, 1e-9);
      }
    }
  }
}

TEST(IndexPersistenceTest, JsonRoundTrip) {
  const auto& idx = testing::fixture_text().index;
  auto back = index_from_json(index_to_json(idx));
  EXPECT_TRUE(back == idx);
  EXPECT_EQ(index_to_json(back).dump(), index_to_json(idx).dump());
  auto q = retrieve("Where is the web conference taking place", 29, back);
  auto r = retrieve("Where is the web conference taking place", 29, idx);
  ASSERT_EQ(q.size(), r.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    EXPECT_EQ(q[i].para_id, r[i].para_id);
    EXPECT_EQ(q[i].score, r[i].score);
  }
}

TEST(IndexPersistenceTest, RejectsInconsistentFiles) {
  auto j = index_to_json(testing::fixture_text().index);
  auto bad_version = j;
  bad_version["version"] = 99;
  EXPECT_THROW(index_from_json(bad_version), ValidationError);
  auto bad_b = j;
  bad_b["b"] = 2.0;
  EXPECT_THROW(index_from_json(bad_b), ValidationError);
}

}  // namespace
}  // namespace siteqa
