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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "siteqa/corpus.hpp"
#include "siteqa/error.hpp"
#include "siteqa/tokenizer.hpp"

namespace siteqa {

struct Bm25Params {
  double k1 = 0.9;
  double b = 0.4;
};

// Retrieval depth used when the caller does not ask for one.
inline constexpr std::size_t kDefaultRetrievalDepth = 29;

struct Posting {
  std::uint32_t doc = 0;  // position in InvertedIndex::para_ids()
  std::uint32_t tf = 0;

  friend bool operator==(const Posting&, const Posting&) = default;
};

struct ScoredParagraph {
  std::string para_id;
  double score = 0.0;
  std::size_t rank = 0;  // 1-based

  friend bool operator==(const ScoredParagraph&, const ScoredParagraph&) = default;
};

// Term -> postings over paragraphs, plus the length statistics BM25 needs.
// Immutable once built; all const members are safe to call concurrently.
class InvertedIndex {
 public:
  InvertedIndex() = default;

  std::size_t num_paragraphs() const { return para_ids_.size(); }
  double avgdl() const { return avgdl_; }
  const Bm25Params& params() const { return params_; }
  const std::vector<std::string>& para_ids() const { return para_ids_; }
  const std::vector<std::uint32_t>& doc_lengths() const { return doc_len_; }
  const std::unordered_map<std::string, std::vector<Posting>>& postings() const { return postings_; }

  std::span<const Posting> postings(const std::string& stem) const {
    auto it = postings_.find(stem);
    if (it == postings_.end()) return {};
    return it->second;
  }

  std::size_t document_frequency(const std::string& stem) const { return postings(stem).size(); }

  std::optional<std::uint32_t> doc_number(std::string_view para_id) const {
    auto it = doc_numbers_.find(std::string(para_id));
    if (it == doc_numbers_.end()) return std::nullopt;
    return it->second;
  }

  // ln(1 + (N - df + 0.5) / (df + 0.5)); strictly positive for 0 <= df <= N.
  double idf(std::size_t df) const {
    const double n = static_cast<double>(num_paragraphs());
    const double d = static_cast<double>(df);
    return std::log(1.0 + (n - d + 0.5) / (d + 0.5));
  }

  double term_weight(std::uint32_t tf, std::uint32_t dl, std::size_t df) const {
    const double f = tf;
    const double norm = 1.0 - params_.b + params_.b * static_cast<double>(dl) / avgdl_;
    return idf(df) * f * (params_.k1 + 1.0) / (f + params_.k1 * norm);
  }

  friend bool operator==(const InvertedIndex& a, const InvertedIndex& b) {
    return a.params_.k1 == b.params_.k1 && a.params_.b == b.params_.b &&
           a.para_ids_ == b.para_ids_ && a.doc_len_ == b.doc_len_ && a.avgdl_ == b.avgdl_ &&
           a.postings_ == b.postings_;
  }

  // Assembles an index from already-counted data; validates every invariant.
  static InvertedIndex from_parts(Bm25Params params, std::vector<std::string> para_ids,
                                  std::vector<std::uint32_t> doc_len,
                                  std::unordered_map<std::string, std::vector<Posting>> postings) {
    if (!(params.k1 >= 0.0) || !(params.b >= 0.0 && params.b <= 1.0))
      throw ValidationError("BM25 parameters out of range (need k1 >= 0, 0 <= b <= 1)");
    if (para_ids.size() != doc_len.size()) throw ValidationError("index: length table mismatch");
    InvertedIndex idx;
    idx.params_ = params;
    idx.para_ids_ = std::move(para_ids);
    idx.doc_len_ = std::move(doc_len);
    idx.postings_ = std::move(postings);
    for (std::uint32_t i = 0; i < idx.para_ids_.size(); ++i)
      if (!idx.doc_numbers_.emplace(idx.para_ids_[i], i).second)
        throw ValidationError("duplicate paragraph id: " + idx.para_ids_[i]);
    for (const auto& [stem, list] : idx.postings_) {
      for (std::size_t i = 0; i < list.size(); ++i) {
        const auto& p = list[i];
        if (p.doc >= idx.para_ids_.size() || p.tf == 0 || (i > 0 && list[i - 1].doc >= p.doc))
          throw ValidationError("index: invalid posting list for term " + stem);
      }
    }
    const double total = std::accumulate(idx.doc_len_.begin(), idx.doc_len_.end(), 0.0);
    idx.avgdl_ = idx.doc_len_.empty() ? 0.0 : total / static_cast<double>(idx.doc_len_.size());
    return idx;
  }

 private:
  Bm25Params params_;
  std::vector<std::string> para_ids_;
  std::vector<std::uint32_t> doc_len_;
  double avgdl_ = 0.0;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
  std::unordered_map<std::string, std::uint32_t> doc_numbers_;
};

// Tokens a paragraph contributes to the index: its document title (when
// present) followed by its text.
inline std::vector<Token> index_tokens(const Paragraph& p) {
  auto tokens = tokenize(p.title);
  for (auto& t : tokenize(p.text)) tokens.push_back(std::move(t));
  return tokens;
}

inline InvertedIndex build_index(std::span<const Paragraph> paragraphs, Bm25Params params = {}) {
  if (paragraphs.empty()) throw ValidationError("cannot build an index over zero paragraphs");
  std::vector<std::string> ids;
  std::vector<std::uint32_t> lens;
  std::unordered_map<std::string, std::vector<Posting>> postings;
  std::unordered_set<std::string> seen;
  for (const auto& p : paragraphs) {
    if (!seen.insert(p.para_id).second) throw ValidationError("duplicate paragraph id: " + p.para_id);
    const auto doc = static_cast<std::uint32_t>(ids.size());
    auto tokens = index_tokens(p);
    std::map<std::string, std::uint32_t> counts;
    for (const auto& t : tokens) ++counts[t.stem];
    for (const auto& [stem, tf] : counts) postings[stem].push_back({doc, tf});
    ids.push_back(p.para_id);
    lens.push_back(static_cast<std::uint32_t>(tokens.size()));
  }
  return InvertedIndex::from_parts(params, std::move(ids), std::move(lens), std::move(postings));
}

// Stems in first-occurrence order, duplicates removed.
inline std::vector<std::string> distinct(std::span<const std::string> stems) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& s : stems)
    if (seen.insert(s).second) out.push_back(s);
  return out;
}

// Distinct non-stopword stems of a question.
inline std::vector<std::string> query_stems(std::string_view question) {
  std::vector<std::string> stems;
  for (const auto& t : tokenize(question))
    if (!t.is_stopword) stems.push_back(t.stem);
  return distinct(stems);
}

inline double bm25_score(std::span<const std::string> query, std::string_view para_id,
                         const InvertedIndex& index) {
  auto doc = index.doc_number(para_id);
  if (!doc) throw ValidationError("unknown paragraph id: " + std::string(para_id));
  double score = 0.0;
  for (const auto& stem : distinct(query)) {
    auto list = index.postings(stem);
    auto it = std::lower_bound(list.begin(), list.end(), *doc,
                               [](const Posting& p, std::uint32_t d) { return p.doc < d; });
    if (it == list.end() || it->doc != *doc) continue;
    score += index.term_weight(it->tf, index.doc_lengths()[*doc], list.size());
  }
  return score;
}

// Top-k paragraphs for the question's non-stopword stems. Zero scores are
// dropped; ties go to the smaller para_id.
inline std::vector<ScoredParagraph> retrieve(std::string_view question, std::size_t k,
                                             const InvertedIndex& index) {
  if (k == 0) throw ValidationError("retrieval depth k must be at least 1");
  std::vector<double> acc(index.num_paragraphs(), 0.0);
  for (const auto& stem : query_stems(question)) {
    auto list = index.postings(stem);
    for (const auto& p : list) acc[p.doc] += index.term_weight(p.tf, index.doc_lengths()[p.doc], list.size());
  }
  std::vector<std::uint32_t> hits;
  for (std::uint32_t d = 0; d < acc.size(); ++d)
    if (acc[d] > 0.0) hits.push_back(d);
  const auto& ids = index.para_ids();
  auto better = [&](std::uint32_t a, std::uint32_t b) {
    if (acc[a] != acc[b]) return acc[a] > acc[b];
    return ids[a] < ids[b];
  };
  const std::size_t n = std::min(k, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(n), hits.end(), better);
  std::vector<ScoredParagraph> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back({ids[hits[i]], acc[hits[i]], i + 1});
  return out;
}

inline constexpr int kIndexFormatVersion = 1;

inline nlohmann::json index_to_json(const InvertedIndex& index) {
  nlohmann::json paras = nlohmann::json::array();
  for (std::size_t i = 0; i < index.num_paragraphs(); ++i)
    paras.push_back({index.para_ids()[i], index.doc_lengths()[i]});
  // Sorted keys keep the file stable across runs.
  std::map<std::string, const std::vector<Posting>*> sorted;
  for (const auto& [stem, list] : index.postings()) sorted.emplace(stem, &list);
  nlohmann::json postings = nlohmann::json::object();
  for (const auto& [stem, list] : sorted) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : *list) arr.push_back({p.doc, p.tf});
    postings[stem] = std::move(arr);
  }
  return {{"format", "siteqa-text-index"},
          {"version", kIndexFormatVersion},
          {"k1", index.params().k1},
          {"b", index.params().b},
          {"paragraphs", paras},
          {"postings", postings}};
}

inline InvertedIndex index_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "siteqa-text-index" || j.value("version", 0) != kIndexFormatVersion)
    throw ValidationError("unsupported text index format");
  Bm25Params params{j.at("k1").get<double>(), j.at("b").get<double>()};
  std::vector<std::string> ids;
  std::vector<std::uint32_t> lens;
  for (const auto& p : j.at("paragraphs")) {
    ids.push_back(p.at(0).get<std::string>());
    lens.push_back(p.at(1).get<std::uint32_t>());
  }
  std::unordered_map<std::string, std::vector<Posting>> postings;
  for (const auto& [stem, arr] : j.at("postings").items()) {
    auto& list = postings[stem];
    for (const auto& p : arr) list.push_back({p.at(0).get<std::uint32_t>(), p.at(1).get<std::uint32_t>()});
  }
  return InvertedIndex::from_parts(params, std::move(ids), std::move(lens), std::move(postings));
}

}  // namespace siteqa
