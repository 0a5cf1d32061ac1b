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
#include <cmath>
#include <cstddef>
#include <istream>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "siteqa/error.hpp"
#include "siteqa/kgstore.hpp"
#include "siteqa/querygen.hpp"
#include "siteqa/tokenizer.hpp"

namespace siteqa {

inline constexpr std::size_t kNumFeatures = 5;

struct FeatureVector {
  double coverage = 0.0;           // question content words covered by provenance spans
  double pattern_count = 1.0;      // enters the score negated
  double exact_label_ratio = 0.0;  // provenance spans spelled exactly like their label
  double log_result_size = 0.0;    // ln(1 + |answers|)
  double relation_linked = 0.0;    // 1 when every relation slot came from a linked span

  // Values as they enter the linear score.
  std::array<double, kNumFeatures> signed_values() const {
    return {coverage, -pattern_count, exact_label_ratio, log_result_size, relation_linked};
  }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

struct RankWeights {
  std::array<double, kNumFeatures> w = {2.0, 0.5, 0.5, -0.1, 0.5};
  double bias = -1.0;
  double theta_kg = 0.5;  // answer threshold on confidence()

  static RankWeights from_json(const nlohmann::json& j) {
    RankWeights rw;
    auto w = j.at("w").get<std::vector<double>>();
    if (w.size() != kNumFeatures) throw ValidationError("weights: 'w' must hold 5 numbers");
    std::copy(w.begin(), w.end(), rw.w.begin());
    rw.bias = j.at("bias").get<double>();
    rw.theta_kg = j.at("theta_kg").get<double>();
    for (double v : rw.w)
      if (!std::isfinite(v)) throw ValidationError("weights: non-finite value");
    if (!std::isfinite(rw.bias) || !(rw.theta_kg >= 0.0 && rw.theta_kg <= 1.0))
      throw ValidationError("weights: bias must be finite and theta_kg in [0, 1]");
    return rw;
  }

  nlohmann::json to_json() const { return {{"w", w}, {"bias", bias}, {"theta_kg", theta_kg}}; }

  friend bool operator==(const RankWeights&, const RankWeights&) = default;
};

inline FeatureVector featurize(std::string_view question, const CandidateQuery& query,
                               std::size_t result_size) {
  FeatureVector f;
  const auto tokens = tokenize(question);
  std::size_t content = 0;
  std::size_t covered = 0;
  for (const auto& t : tokens) {
    if (t.is_stopword) continue;
    ++content;
    bool in_span = std::any_of(query.provenance.begin(), query.provenance.end(), [&](const LinkedSpan& s) {
      return s.start_tok <= t.position && t.position < s.end_tok;
    });
    if (in_span) ++covered;
  }
  f.coverage = content ? static_cast<double>(covered) / static_cast<double>(content) : 0.0;
  f.pattern_count = static_cast<double>(query.pattern_count());
  if (!query.provenance.empty()) {
    auto exact = std::count_if(query.provenance.begin(), query.provenance.end(),
                               [](const LinkedSpan& s) { return s.surface_matches_label(); });
    f.exact_label_ratio = static_cast<double>(exact) / static_cast<double>(query.provenance.size());
  }
  f.log_result_size = std::log1p(static_cast<double>(result_size));
  f.relation_linked = query.linked_relation_slots == query.relation_slots ? 1.0 : 0.0;
  return f;
}

inline FeatureVector featurize(std::string_view question, const CandidateQuery& query,
                               const ResultSet& result) {
  return featurize(question, query, result.size());
}

inline double linear_score(const FeatureVector& f, const RankWeights& rw) {
  const auto x = f.signed_values();
  double s = rw.bias;
  for (std::size_t i = 0; i < kNumFeatures; ++i) s += rw.w[i] * x[i];
  return s;
}

inline double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Binary-classifier confidence that the top-ranked query answers the question.
inline double confidence(const FeatureVector& top, const RankWeights& rw) {
  return logistic(linear_score(top, rw));
}

struct RankedQuery {
  CandidateQuery query;
  FeatureVector features;
  double score = 0.0;
};

// Strict ordering used by rank(): score descending, then fewer patterns,
// then serialization ascending.
inline bool ranks_before(double score_a, std::size_t patterns_a, const std::string& ser_a, double score_b,
                         std::size_t patterns_b, const std::string& ser_b) {
  if (score_a != score_b) return score_a > score_b;
  if (patterns_a != patterns_b) return patterns_a < patterns_b;
  return ser_a < ser_b;
}

inline std::vector<RankedQuery> rank(std::vector<std::pair<CandidateQuery, FeatureVector>> candidates,
                                     const RankWeights& rw) {
  std::vector<RankedQuery> out;
  out.reserve(candidates.size());
  for (auto& [q, f] : candidates) {
    double s = linear_score(f, rw);
    out.push_back({std::move(q), f, s});
  }
  std::sort(out.begin(), out.end(), [](const RankedQuery& a, const RankedQuery& b) {
    return ranks_before(a.score, a.query.pattern_count(), a.query.serialization, b.score,
                        b.query.pattern_count(), b.query.serialization);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Pairwise perceptron training.

struct TrainingGroup {
  std::vector<FeatureVector> features;
  std::vector<std::size_t> pattern_counts;
  std::vector<std::string> serializations;
  std::size_t correct = 0;  // index into the vectors above
};

struct TrainingOptions {
  double learning_rate = 0.1;
  std::size_t epochs = 50;
};

struct TrainingReport {
  RankWeights weights;
  std::size_t updates = 0;
  std::size_t skipped = 0;  // questions without usable candidates
};

// For every (correct, incorrect) pair that the current weights order wrongly,
// w += learning_rate * (f_correct - f_incorrect). Bias and threshold are not
// trained. Groups are visited in the given order each epoch.
inline TrainingReport train_pairwise(std::span<const TrainingGroup> groups, RankWeights init,
                                     const TrainingOptions& opts = {}) {
  TrainingReport report{init, 0, 0};
  auto& rw = report.weights;
  for (std::size_t epoch = 0; epoch < opts.epochs; ++epoch) {
    bool changed = false;
    for (const auto& g : groups) {
      const std::size_t c = g.correct;
      for (std::size_t i = 0; i < g.features.size(); ++i) {
        if (i == c) continue;
        const double sc = linear_score(g.features[c], rw);
        const double si = linear_score(g.features[i], rw);
        bool misordered = ranks_before(si, g.pattern_counts[i], g.serializations[i], sc, g.pattern_counts[c],
                                       g.serializations[c]);
        if (!misordered) continue;
        const auto xc = g.features[c].signed_values();
        const auto xi = g.features[i].signed_values();
        for (std::size_t k = 0; k < kNumFeatures; ++k) rw.w[k] += opts.learning_rate * (xc[k] - xi[k]);
        ++report.updates;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return report;
}

struct TrainingRecord {
  std::string question;
  std::string gold_query;  // canonical serialization
};

// JSON-lines {"question": ..., "gold_query": ...}.
inline std::vector<TrainingRecord> read_training_file(std::istream& in) {
  std::vector<TrainingRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      records.push_back({j.at("question").get<std::string>(), j.at("gold_query").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid training record: ") + e.what(), line_no);
    }
  }
  return records;
}

// Candidates for a question, ready for ranking.
inline std::vector<std::pair<CandidateQuery, FeatureVector>> featurized_candidates(
    std::string_view question, const KnowledgeGraph& graph, const QueryGenOptions& gen_opts = {},
    std::size_t max_ngram = kDefaultMaxNgram) {
  auto spans = link(question, graph, max_ngram);
  std::vector<std::pair<CandidateQuery, FeatureVector>> out;
  for (auto& q : generate(spans, graph, gen_opts)) {
    auto f = featurize(question, q, q.answers.size());
    out.emplace_back(std::move(q), f);
  }
  return out;
}

// Learns ranking weights from questions paired with their correct query.
// Questions whose candidates do not include the gold query are skipped and
// counted in the report.
inline TrainingReport train_weights(std::span<const TrainingRecord> records, const KnowledgeGraph& graph,
                                    RankWeights init = {}, const TrainingOptions& opts = {},
                                    const QueryGenOptions& gen_opts = {}) {
  std::vector<TrainingGroup> groups;
  std::size_t skipped = 0;
  for (const auto& r : records) {
    auto cands = featurized_candidates(r.question, graph, gen_opts);
    TrainingGroup g;
    bool found = false;
    for (auto& [q, f] : cands) {
      if (q.serialization == r.gold_query) {
        g.correct = g.features.size();
        found = true;
      }
      g.features.push_back(f);
      g.pattern_counts.push_back(q.pattern_count());
      g.serializations.push_back(q.serialization);
    }
    if (!found) {
      ++skipped;
      continue;
    }
    groups.push_back(std::move(g));
  }
  auto report = train_pairwise(groups, init, opts);
  report.skipped = skipped;
  return report;
}

}  // namespace siteqa
