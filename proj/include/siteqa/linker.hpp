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

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "siteqa/kgstore.hpp"
#include "siteqa/tokenizer.hpp"

namespace siteqa {

// A question n-gram whose stems equal the stemmed label of a graph element.
struct LinkedSpan {
  std::size_t start_tok = 0;
  std::size_t end_tok = 0;  // exclusive
  std::string surface;      // question text covered by the n-gram
  TermId element = 0;
  std::string iri;
  ElementKind kind = ElementKind::Node;
  std::string label_matched;

  std::size_t length() const { return end_tok - start_tok; }

  // Surface and label agree before stemming (ASCII case ignored).
  bool surface_matches_label() const { return ascii_lower(surface) == ascii_lower(label_matched); }

  bool overlaps(const LinkedSpan& other) const {
    return start_tok < other.end_tok && other.start_tok < end_tok;
  }

  friend bool operator==(const LinkedSpan&, const LinkedSpan&) = default;
};

inline constexpr std::size_t kDefaultMaxNgram = 8;

// Looks up every n-gram of up to max_ngram tokens in the label index and
// returns all matches. Stopword-only n-grams are skipped, and a match wholly
// inside a longer match for the same element is dropped. Ordered by start
// token, then longer first.
inline std::vector<LinkedSpan> link(std::string_view question, const KnowledgeGraph& graph,
                                    std::size_t max_ngram = kDefaultMaxNgram) {
  const auto tokens = tokenize(question);
  std::vector<LinkedSpan> spans;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    bool all_stop = true;
    for (std::size_t end = i + 1; end <= tokens.size() && end - i <= max_ngram; ++end) {
      all_stop = all_stop && tokens[end - 1].is_stopword;
      if (all_stop) continue;
      for (const auto& entry : graph.lookup_label(stem_phrase(tokens, i, end))) {
        LinkedSpan s;
        s.start_tok = i;
        s.end_tok = end;
        s.surface = std::string(
            question.substr(tokens[i].start_char, tokens[end - 1].end_char - tokens[i].start_char));
        s.element = entry.element;
        s.iri = graph.term(entry.element).value;
        s.kind = entry.kind;
        s.label_matched = entry.label;
        spans.push_back(std::move(s));
      }
    }
  }
  // Several labels of one element can match the same n-gram; keep one,
  // preferring a label spelled like the question text.
  std::sort(spans.begin(), spans.end(), [](const LinkedSpan& a, const LinkedSpan& b) {
    if (a.start_tok != b.start_tok) return a.start_tok < b.start_tok;
    if (a.length() != b.length()) return a.length() > b.length();
    if (a.iri != b.iri) return a.iri < b.iri;
    if (a.surface_matches_label() != b.surface_matches_label()) return a.surface_matches_label();
    return a.label_matched < b.label_matched;
  });
  spans.erase(std::unique(spans.begin(), spans.end(),
                          [](const LinkedSpan& a, const LinkedSpan& b) {
                            return a.start_tok == b.start_tok && a.end_tok == b.end_tok &&
                                   a.element == b.element;
                          }),
              spans.end());
  std::vector<LinkedSpan> kept;
  for (const auto& s : spans) {
    bool contained = std::any_of(spans.begin(), spans.end(), [&](const LinkedSpan& o) {
      return o.element == s.element && o.length() > s.length() && o.start_tok <= s.start_tok &&
             s.end_tok <= o.end_tok;
    });
    if (!contained) kept.push_back(s);
  }
  return kept;
}

}  // namespace siteqa
