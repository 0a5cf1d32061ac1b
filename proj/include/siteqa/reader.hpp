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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "siteqa/corpus.hpp"
#include "siteqa/error.hpp"
#include "siteqa/retriever.hpp"
#include "siteqa/tokenizer.hpp"

namespace siteqa {

// Answer candidate inside one paragraph. Offsets are byte offsets into the
// paragraph text, end exclusive.
struct ScoredSpan {
  std::string para_id;
  std::size_t start_char = 0;
  std::size_t end_char = 0;
  std::string text;
  double span_score = 0.0;

  friend bool operator==(const ScoredSpan&, const ScoredSpan&) = default;
};

struct TextAnswer {
  std::optional<ScoredSpan> best;
  std::vector<ScoredSpan> candidates;  // score-descending
  double confidence = 0.0;

  friend bool operator==(const TextAnswer&, const TextAnswer&) = default;
};

struct ReaderOptions {
  std::size_t max_span_tokens = 30;
  std::size_t window = 20;
  double span_weight = 0.7;
  double retrieval_weight = 0.3;
  double null_threshold = 0.5;
  std::size_t max_candidates = 10;
};

// Lexical baseline for span extraction.
//
// Candidates are the maximal runs of paragraph tokens that are neither
// stopwords nor question content stems, cut into chunks of at most
// max_span_tokens. A candidate scores the fraction of distinct question
// content stems that occur within `window` tokens of it. Results are ordered
// by score, then by token length (longer first), then by position.
inline std::vector<ScoredSpan> extract_spans(std::string_view question, const Paragraph& paragraph,
                                             std::size_t max_span_tokens = 30,
                                             std::size_t window = 20) {
  if (max_span_tokens == 0) throw ValidationError("max_span_tokens must be at least 1");
  const auto qstems_list = query_stems(question);
  const std::unordered_set<std::string> qstems(qstems_list.begin(), qstems_list.end());
  const auto tokens = tokenize(paragraph.text);
  const std::size_t n = tokens.size();

  auto blocked = [&](std::size_t i) { return tokens[i].is_stopword || qstems.contains(tokens[i].stem); };

  struct Candidate {
    ScoredSpan span;
    std::size_t length;
  };
  std::vector<Candidate> found;
  std::size_t i = 0;
  while (i < n) {
    if (blocked(i)) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (run_end < n && !blocked(run_end)) ++run_end;
    for (std::size_t a = i; a < run_end; a += max_span_tokens) {
      const std::size_t b = std::min(a + max_span_tokens, run_end);
      std::unordered_set<std::string> near;
      const std::size_t lo = a >= window ? a - window : 0;
      const std::size_t hi = std::min(n, b + window);
      for (std::size_t t = lo; t < hi; ++t)
        if (qstems.contains(tokens[t].stem)) near.insert(tokens[t].stem);
      ScoredSpan s;
      s.para_id = paragraph.para_id;
      s.start_char = tokens[a].start_char;
      s.end_char = tokens[b - 1].end_char;
      s.text = paragraph.text.substr(s.start_char, s.end_char - s.start_char);
      s.span_score = qstems.empty() ? 0.0
                                    : static_cast<double>(near.size()) / static_cast<double>(qstems.size());
      found.push_back({std::move(s), b - a});
    }
    i = run_end;
  }
  std::stable_sort(found.begin(), found.end(), [](const Candidate& x, const Candidate& y) {
    if (x.span.span_score != y.span.span_score) return x.span.span_score > y.span.span_score;
    if (x.length != y.length) return x.length > y.length;
    return x.span.start_char < y.span.start_char;
  });
  std::vector<ScoredSpan> out;
  out.reserve(found.size());
  for (auto& c : found) out.push_back(std::move(c.span));
  return out;
}

namespace detail {

inline TextAnswer finalize_answer(std::vector<ScoredSpan> ranked, const ReaderOptions& opts) {
  TextAnswer answer;
  if (ranked.size() > opts.max_candidates) ranked.resize(opts.max_candidates);
  answer.candidates = std::move(ranked);
  if (!answer.candidates.empty() && answer.candidates.front().span_score >= opts.null_threshold) {
    answer.best = answer.candidates.front();
    answer.confidence = answer.best->span_score;
  }
  return answer;
}

}  // namespace detail

// Pools baseline spans over the retrieved paragraphs. Each candidate's
// span_score is replaced by
//   span_weight * lexical score + retrieval_weight * min-max normalized retrieval score
// (a pool whose scores are all equal normalizes to 1). The best candidate is
// reported only when it reaches opts.null_threshold.
inline TextAnswer read(std::string_view question, std::span<const ScoredParagraph> retrieved,
                       const Corpus& corpus, const ReaderOptions& opts = {}) {
  if (retrieved.empty()) return {};
  double lo = retrieved.front().score;
  double hi = lo;
  for (const auto& r : retrieved) {
    lo = std::min(lo, r.score);
    hi = std::max(hi, r.score);
  }
  struct Pooled {
    ScoredSpan span;
    std::size_t para_order;
    std::size_t span_order;
  };
  std::vector<Pooled> pool;
  for (std::size_t pi = 0; pi < retrieved.size(); ++pi) {
    const auto& r = retrieved[pi];
    const Paragraph* p = corpus.find_paragraph(r.para_id);
    if (!p) throw ValidationError("retrieved paragraph not in corpus: " + r.para_id);
    const double norm = hi > lo ? (r.score - lo) / (hi - lo) : 1.0;
    auto spans = extract_spans(question, *p, opts.max_span_tokens, opts.window);
    for (std::size_t si = 0; si < spans.size(); ++si) {
      auto& s = spans[si];
      double combined = opts.span_weight * s.span_score + opts.retrieval_weight * norm;
      s.span_score = std::clamp(combined, 0.0, 1.0);
      pool.push_back({std::move(s), pi, si});
    }
  }
  std::sort(pool.begin(), pool.end(), [](const Pooled& a, const Pooled& b) {
    if (a.span.span_score != b.span.span_score) return a.span.span_score > b.span.span_score;
    if (a.para_order != b.para_order) return a.para_order < b.para_order;
    return a.span_order < b.span_order;
  });
  std::vector<ScoredSpan> ranked;
  ranked.reserve(pool.size());
  for (auto& p : pool) ranked.push_back(std::move(p.span));
  return detail::finalize_answer(std::move(ranked), opts);
}

}  // namespace siteqa
