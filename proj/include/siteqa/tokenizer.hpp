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
#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "siteqa/porter.hpp"

namespace siteqa {

struct Token {
  std::string surface;
  std::string stem;
  bool is_stopword = false;
  std::size_t position = 0;
  // Byte range of the surface in the tokenized text, end exclusive.
  std::size_t start_char = 0;
  std::size_t end_char = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

namespace detail {

// Classic 127-word English stopword list, sorted for binary search.
inline constexpr std::array<std::string_view, 127> kStopwords = [] {
  std::array<std::string_view, 127> words = {
      "a",          "about",   "above",   "after",    "again",      "against",
      "all",        "am",      "an",      "and",      "any",        "are",
      "as",         "at",      "be",      "because",  "been",       "before",
      "being",      "below",   "between", "both",     "but",        "by",
      "can",        "did",     "do",      "does",     "doing",      "don",
      "down",       "during",  "each",    "few",      "for",        "from",
      "further",    "had",     "has",     "have",     "having",     "he",
      "her",        "here",    "hers",    "herself",  "him",        "himself",
      "his",        "how",     "i",       "if",       "in",         "into",
      "is",         "it",      "its",     "itself",   "just",       "me",
      "more",       "most",    "my",      "myself",   "no",         "nor",
      "not",        "now",     "of",      "off",      "on",         "once",
      "only",       "or",      "other",   "our",      "ours",       "ourselves",
      "out",        "over",    "own",     "s",        "same",       "she",
      "should",     "so",      "some",    "such",     "t",          "than",
      "that",       "the",     "their",   "theirs",   "them",       "themselves",
      "then",       "there",   "these",   "they",     "this",       "those",
      "through",    "to",      "too",     "under",    "until",      "up",
      "very",       "was",     "we",      "were",     "what",       "when",
      "where",      "which",   "while",   "who",      "whom",       "why",
      "will",       "with",    "you",     "your",     "yours",      "yourself",
      "yourselves"};
  std::sort(words.begin(), words.end());
  return words;
}();

inline bool is_word_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         c >= 0x80;
}

inline bool all_ascii_lower(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

}  // namespace detail

inline bool is_stopword(std::string_view lowercase_word) {
  return std::binary_search(detail::kStopwords.begin(), detail::kStopwords.end(),
                            lowercase_word);
}

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

// Splits on runs of non-alphanumeric bytes (bytes >= 0x80 count as word
// characters, so UTF-8 words stay whole), lowercases ASCII, Porter-stems
// purely alphabetic words and flags stopwords. Stopwords are kept.
inline std::vector<Token> tokenize(std::string_view text) {
  static const PorterStemmer stemmer;
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && !detail::is_word_byte(static_cast<unsigned char>(text[i]))) i++;
    if (i >= n) break;
    std::size_t start = i;
    while (i < n && detail::is_word_byte(static_cast<unsigned char>(text[i]))) i++;
    Token tok;
    tok.surface = std::string(text.substr(start, i - start));
    std::string lower = ascii_lower(tok.surface);
    tok.is_stopword = is_stopword(lower);
    tok.stem = detail::all_ascii_lower(lower) ? stemmer(lower) : lower;
    tok.position = tokens.size();
    tok.start_char = start;
    tok.end_char = i;
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

// Stems of a token list joined by single spaces; the key under which
// labels are indexed and n-grams are looked up.
inline std::string stem_phrase(const std::vector<Token>& tokens, std::size_t begin,
                               std::size_t end) {
  std::string key;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) key += ' ';
    key += tokens[i].stem;
  }
  return key;
}

inline std::string stem_phrase(const std::vector<Token>& tokens) {
  return stem_phrase(tokens, 0, tokens.size());
}

}  // namespace siteqa
