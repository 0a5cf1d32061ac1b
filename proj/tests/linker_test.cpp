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

#include <random>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "siteqa/linker.hpp"
#include "support.hpp"

namespace siteqa {
namespace {

std::set<oracle::LinkKey> keys(const std::vector<LinkedSpan>& spans) {
  std::set<oracle::LinkKey> out;
  for (const auto& s : spans) out.emplace(s.start_tok, s.end_tok, s.iri, s.kind);
  return out;
}

TEST(LinkerTest, CapitalOfItaly) {
  auto spans = link("What is the capital of Italy?", testing::fixture_graph());
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(spans[0].iri, testing::prop("capital"));
  EXPECT_EQ(spans[0].kind, ElementKind::Relation);
  EXPECT_EQ(spans[0].start_tok, 3u);
  EXPECT_EQ(spans[0].surface, "capital");
  EXPECT_EQ(spans[1].iri, testing::ex("Italy"));
  EXPECT_EQ(spans[1].kind, ElementKind::Node);
  EXPECT_EQ(spans[1].start_tok, 5u);
  EXPECT_TRUE(spans[1].surface_matches_label());
}

TEST(LinkerTest, InflectedSurfaceStillLinks) {
  auto spans = link("capitals of Italy", testing::fixture_graph());
  ASSERT_FALSE(spans.empty());
  EXPECT_EQ(spans[0].iri, testing::prop("capital"));
  EXPECT_EQ(spans[0].surface, "capitals");
  EXPECT_FALSE(spans[0].surface_matches_label());
}

TEST(LinkerTest, NoMatches) {
  EXPECT_TRUE(link("zzz qqq", testing::fixture_graph()).empty());
  EXPECT_TRUE(link("", testing::fixture_graph()).empty());
  // stopword-only n-grams never link, even if some label were a stopword
  auto ts = std::vector<Triple>{{Term::iri("http://ex/a"), Term::iri(gen::kLabel), Term::literal("the")}};
  EXPECT_TRUE(link("the", build_graph(ts, default_label_predicates())).empty());
}

TEST(LinkerTest, OrderedByStartThenLongerFirst) {
  auto spans = link("the web conference 2018 participants in the semantic web", testing::fixture_graph());
  ASSERT_GT(spans.size(), 2u);
  for (std::size_t i = 1; i < spans.size(); ++i) {
    const auto& a = spans[i - 1];
    const auto& b = spans[i];
    EXPECT_TRUE(a.start_tok < b.start_tok || (a.start_tok == b.start_tok && a.length() >= b.length()));
  }
}

// Overlapping matches for different elements both survive; a match inside a
// longer match for the same element does not.
TEST(LinkerTest, OverlapRules) {
  std::vector<Triple> ts = {
      {Term::iri("http://ex/a"), Term::iri(gen::kLabel), Term::literal("stone bridge")},
      {Term::iri("http://ex/b"), Term::iri(gen::kLabel), Term::literal("bridge")},
      {Term::iri("http://ex/a"), Term::iri(gen::kLabel), Term::literal("stone")},
  };
  auto spans = link("old stone bridge", build_graph(ts, default_label_predicates()));
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(spans[0].iri, "http://ex/a");
  EXPECT_EQ(spans[0].length(), 2u);
  EXPECT_EQ(spans[1].iri, "http://ex/b");
}

TEST(LinkerTest, MaxNgramBound) {
  auto spans = link("the web conference 2018", testing::fixture_graph(), 2);
  for (const auto& s : spans) EXPECT_LE(s.length(), 2u);
}

TEST(LinkerTest, FixtureQuestionsMatchOracle) {
  const auto triples = testing::fixture_triples();
  std::mt19937 rng(11);
  std::vector<std::string> labels;
  for (const auto& t : triples)
    if (t.object.is_literal() && (t.predicate.value == default_label_predicates()[0] ||
                                  t.predicate.value == default_label_predicates()[1]))
      labels.push_back(t.object.value);
  for (int i = 0; i < 40; ++i) {
    auto q = gen::random_question(rng, labels);
    EXPECT_EQ(keys(link(q, testing::fixture_graph())), oracle::link(q, triples, default_label_predicates()))
        << q;
  }
}

TEST(LinkerTest, RandomGraphsMatchOracle) {
  std::mt19937 rng(12);
  for (int i = 0; i < 200; ++i) {
    auto inst = gen::random_kg_instance(rng);
    auto g = build_graph(inst.triples, default_label_predicates());
    EXPECT_EQ(keys(link(inst.question, g)), oracle::link(inst.question, inst.triples, default_label_predicates()))
        << inst.question;
  }
}

}  // namespace
}  // namespace siteqa
