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

#include <algorithm>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "siteqa/tokenizer.hpp"

namespace siteqa {
namespace {

std::vector<std::string> stems(const std::vector<Token>& toks) {
  std::vector<std::string> out;
  for (const auto& t : toks) out.push_back(t.stem);
  return out;
}

TEST(TokenizerTest, StemsAndFlagsStopwords) {
  auto toks = tokenize("Capitals of Italy");
  EXPECT_EQ(stems(toks), (std::vector<std::string>{"capit", "of", "itali"}));
  EXPECT_FALSE(toks[0].is_stopword);
  EXPECT_TRUE(toks[1].is_stopword);
  EXPECT_FALSE(toks[2].is_stopword);
}

TEST(TokenizerTest, EmptyText) {
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize("  ,;-- ").empty());
}

TEST(TokenizerTest, CaseFolding) {
  auto toks = tokenize("ITALY italy");
  ASSERT_EQ(toks.size(), 2u);
  EXPECT_EQ(toks[0].stem, "itali");
  EXPECT_EQ(toks[1].stem, "itali");
  EXPECT_EQ(toks[0].surface, "ITALY");
}

TEST(TokenizerTest, OffsetsSliceTheInput) {
  const std::string text = "What's the capital of Italy? Rome, 2,748,109 people.";
  auto toks = tokenize(text);
  for (std::size_t i = 0; i < toks.size(); ++i) {
    EXPECT_EQ(text.substr(toks[i].start_char, toks[i].end_char - toks[i].start_char), toks[i].surface);
    EXPECT_EQ(toks[i].position, i);
    if (i > 0) {
      EXPECT_GT(toks[i].start_char, toks[i - 1].start_char);
    }
  }
  EXPECT_EQ(toks[0].surface, "What");
  EXPECT_EQ(toks[1].surface, "s");
  EXPECT_TRUE(toks[0].is_stopword);
  EXPECT_TRUE(toks[1].is_stopword);
}

TEST(TokenizerTest, StemsAreLowercase) {
  for (const auto& t : tokenize("The Web Conference 2022 takes place in LYON"))
    EXPECT_TRUE(std::none_of(t.stem.begin(), t.stem.end(), [](char c) { return c >= 'A' && c <= 'Z'; }));
}

TEST(TokenizerTest, DigitsAndNonAsciiAreNotStemmed) {
  auto toks = tokenize("2022 Zürich caf\xc3\xa9s");
  ASSERT_EQ(toks.size(), 3u);
  EXPECT_EQ(toks[0].stem, "2022");
  EXPECT_EQ(toks[1].stem, "z\xc3\xbcrich");
  EXPECT_EQ(toks[2].stem, "caf\xc3\xa9s");
}

TEST(TokenizerTest, StopwordList) {
  EXPECT_TRUE(is_stopword("the"));
  EXPECT_TRUE(is_stopword("where"));
  EXPECT_TRUE(is_stopword("about"));
  EXPECT_FALSE(is_stopword("capital"));
  EXPECT_FALSE(is_stopword("web"));
  EXPECT_EQ(detail::kStopwords.size(), 127u);
  EXPECT_TRUE(std::is_sorted(detail::kStopwords.begin(), detail::kStopwords.end()));
}

TEST(TokenizerTest, StemPhrase) {
  auto toks = tokenize("the Web Conference");
  EXPECT_EQ(stem_phrase(toks), "the web confer");
  EXPECT_EQ(stem_phrase(toks, 1, 3), "web confer");
}

}  // namespace
}  // namespace siteqa
