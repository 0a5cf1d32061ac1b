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

#include <chrono>
#include <cstddef>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "siteqa/corpus.hpp"
#include "siteqa/error.hpp"
#include "siteqa/kgstore.hpp"
#include "siteqa/linker.hpp"
#include "siteqa/querygen.hpp"
#include "siteqa/ranker.hpp"
#include "siteqa/reader.hpp"
#include "siteqa/retriever.hpp"

namespace siteqa {

enum class ReaderMode { Baseline, Remote };

// Every tunable of the pipeline. Loaded from a JSON file whose sections
// mirror the members below; absent keys keep their defaults.
struct Config {
  SplitOptions split;
  Bm25Params bm25;
  std::size_t retrieval_depth = kDefaultRetrievalDepth;

  ReaderOptions reader;
  ReaderMode reader_mode = ReaderMode::Baseline;
  std::string reader_endpoint;
  std::chrono::milliseconds reader_timeout{2000};

  std::vector<std::string> label_predicates = default_label_predicates();
  EnrichmentProps enrichment;
  std::size_t max_ngram = kDefaultMaxNgram;
  QueryGenOptions querygen;

  RankWeights weights;
  double theta_text = 0.5;
  std::size_t low_confidence_per_branch = 5;

  std::string cors_origin = "*";

  static Config from_json(const nlohmann::json& j) {
    Config c;
    try {
      if (auto s = j.find("corpus"); s != j.end()) {
        c.split.min_chars = s->value("min_chars", c.split.min_chars);
        c.split.max_chars = s->value("max_chars", c.split.max_chars);
      }
      if (auto s = j.find("retriever"); s != j.end()) {
        c.bm25.k1 = s->value("k1", c.bm25.k1);
        c.bm25.b = s->value("b", c.bm25.b);
        c.retrieval_depth = s->value("k", c.retrieval_depth);
      }
      if (auto s = j.find("reader"); s != j.end()) {
        auto& r = c.reader;
        r.max_span_tokens = s->value("max_span_tokens", r.max_span_tokens);
        r.window = s->value("window", r.window);
        r.span_weight = s->value("span_weight", r.span_weight);
        r.retrieval_weight = s->value("retrieval_weight", r.retrieval_weight);
        r.null_threshold = s->value("theta_null", r.null_threshold);
        r.max_candidates = s->value("max_candidates", r.max_candidates);
        auto mode = s->value("mode", std::string("baseline"));
        if (mode == "baseline") c.reader_mode = ReaderMode::Baseline;
        else if (mode == "remote") c.reader_mode = ReaderMode::Remote;
        else throw ValidationError("config: reader.mode must be 'baseline' or 'remote'");
        c.reader_endpoint = s->value("endpoint", c.reader_endpoint);
        c.reader_timeout = std::chrono::milliseconds(s->value("timeout_ms", c.reader_timeout.count()));
      }
      if (auto s = j.find("kg"); s != j.end()) {
        c.label_predicates = s->value("label_predicates", c.label_predicates);
        if (auto e = s->find("enrichment"); e != s->end()) c.enrichment = EnrichmentProps::from_json(*e);
        c.max_ngram = s->value("max_ngram", c.max_ngram);
        c.querygen.max_patterns = s->value("max_patterns", c.querygen.max_patterns);
        c.querygen.max_candidates = s->value("max_candidates", c.querygen.max_candidates);
      }
      if (auto s = j.find("ranker"); s != j.end()) c.weights = RankWeights::from_json(*s);
      if (auto s = j.find("combiner"); s != j.end()) {
        c.theta_text = s->value("theta_text", c.theta_text);
        c.low_confidence_per_branch = s->value("low_confidence_per_branch", c.low_confidence_per_branch);
      }
      if (auto s = j.find("service"); s != j.end()) c.cors_origin = s->value("cors_origin", c.cors_origin);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
  }

  nlohmann::json to_json() const {
    return {
        {"corpus", {{"min_chars", split.min_chars}, {"max_chars", split.max_chars}}},
        {"retriever", {{"k1", bm25.k1}, {"b", bm25.b}, {"k", retrieval_depth}}},
        {"reader",
         {{"mode", reader_mode == ReaderMode::Baseline ? "baseline" : "remote"},
          {"max_span_tokens", reader.max_span_tokens},
          {"window", reader.window},
          {"span_weight", reader.span_weight},
          {"retrieval_weight", reader.retrieval_weight},
          {"theta_null", reader.null_threshold},
          {"max_candidates", reader.max_candidates},
          {"endpoint", reader_endpoint},
          {"timeout_ms", reader_timeout.count()}}},
        {"kg",
         {{"label_predicates", label_predicates},
          {"enrichment", enrichment.to_json()},
          {"max_ngram", max_ngram},
          {"max_patterns", querygen.max_patterns},
          {"max_candidates", querygen.max_candidates}}},
        {"ranker", weights.to_json()},
        {"combiner", {{"theta_text", theta_text}, {"low_confidence_per_branch", low_confidence_per_branch}}},
        {"service", {{"cors_origin", cors_origin}}},
    };
  }

  void validate() const {
    if (split.min_chars == 0 || split.min_chars >= split.max_chars)
      throw ValidationError("config: need 0 < corpus.min_chars < corpus.max_chars");
    if (retrieval_depth == 0) throw ValidationError("config: retriever.k must be at least 1");
    if (!(bm25.k1 >= 0.0) || !(bm25.b >= 0.0 && bm25.b <= 1.0))
      throw ValidationError("config: need k1 >= 0 and 0 <= b <= 1");
    if (!(reader.null_threshold >= 0.0 && reader.null_threshold <= 1.0))
      throw ValidationError("config: reader.theta_null must be in [0, 1]");
    if (reader.max_span_tokens == 0) throw ValidationError("config: reader.max_span_tokens must be >= 1");
    if (!(theta_text >= 0.0 && theta_text <= 1.0))
      throw ValidationError("config: combiner.theta_text must be in [0, 1]");
    if (querygen.max_patterns < 1 || querygen.max_patterns > 2)
      throw ValidationError("config: kg.max_patterns must be 1 or 2");
    if (max_ngram == 0) throw ValidationError("config: kg.max_ngram must be >= 1");
  }
};

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump() << '\n';
  if (!out) throw IoError("error writing " + path);
}

}  // namespace siteqa
