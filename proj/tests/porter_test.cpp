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

#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "siteqa/porter.hpp"
#include "support.hpp"

namespace siteqa {
namespace {

TEST(PorterTest, ClassicExamples) {
  EXPECT_EQ(porter_stem("caresses"), "caress");
  EXPECT_EQ(porter_stem("ponies"), "poni");
  EXPECT_EQ(porter_stem("relational"), "relat");
  EXPECT_EQ(porter_stem("generalizations"), "gener");
  EXPECT_EQ(porter_stem("hopping"), "hop");
  EXPECT_EQ(porter_stem("capitals"), "capit");
  EXPECT_EQ(porter_stem("capital"), "capit");
  EXPECT_EQ(porter_stem("italy"), "itali");
  EXPECT_EQ(porter_stem("conference"), "confer");
}

TEST(PorterTest, ShortWordsUntouched) {
  EXPECT_EQ(porter_stem("as"), "as");
  EXPECT_EQ(porter_stem("is"), "is");
  EXPECT_EQ(porter_stem("a"), "a");
  EXPECT_EQ(porter_stem(""), "");
}

// Frozen output of a reference Porter implementation for 2000 words.
TEST(PorterTest, MatchesReferenceVocabulary) {
  std::ifstream in(testing::test_data_dir() / "porter_reference.tsv");
  ASSERT_TRUE(in.good());
  std::string line;
  int checked = 0;
  while (std::getline(in, line)) {
    auto tab = line.find('\t');
    ASSERT_NE(tab, std::string::npos) << line;
    std::string word = line.substr(0, tab);
    std::string stem = line.substr(tab + 1);
    EXPECT_EQ(porter_stem(word), stem) << word;
    ++checked;
  }
  EXPECT_EQ(checked, 2000);
}

}  // namespace
}  // namespace siteqa
