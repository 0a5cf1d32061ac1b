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

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "siteqa/combiner.hpp"
#include "siteqa/config.hpp"
#include "siteqa/corpus.hpp"
#include "siteqa/error.hpp"
#include "siteqa/kgstore.hpp"
#include "siteqa/retriever.hpp"

namespace siteqa {

namespace fs = std::filesystem;

struct TextData {
  Corpus corpus;
  InvertedIndex index;
};

// Everything a query needs, loaded once and shared read-only between
// request threads.
struct Dataset {
  Config config;
  std::optional<TextData> text;
  std::optional<KnowledgeGraph> graph;
};

// File names inside a data directory.
inline constexpr const char* kConfigFile = "config.json";
inline constexpr const char* kCorpusFile = "corpus.json";
inline constexpr const char* kTextIndexFile = "text_index.json";
inline constexpr const char* kGraphFile = "graph.json";
inline constexpr const char* kRawCorpusFile = "corpus.jsonl";
inline constexpr const char* kRawGraphFile = "graph.nt";

inline TextData build_text_data(const std::string& corpus_jsonl, const Config& cfg) {
  std::ifstream in(corpus_jsonl);
  if (!in) throw IoError("cannot open " + corpus_jsonl);
  Corpus corpus(ingest_documents(in), cfg.split);
  if (corpus.paragraphs().empty()) throw ValidationError(corpus_jsonl + ": corpus has no paragraphs");
  auto index = build_index(corpus.paragraphs(), cfg.bm25);
  return {std::move(corpus), std::move(index)};
}

inline KnowledgeGraph build_graph_from_file(const std::string& ntriples, const Config& cfg) {
  std::ifstream in(ntriples);
  if (!in) throw IoError("cannot open " + ntriples);
  auto triples = parse_ntriples(in);
  return build_graph(triples, cfg.label_predicates, cfg.enrichment);
}

inline void save_text_data(const TextData& data, const fs::path& dir) {
  fs::create_directories(dir);
  write_json_file((dir / kCorpusFile).string(), corpus_to_json(data.corpus));
  write_json_file((dir / kTextIndexFile).string(), index_to_json(data.index));
}

inline void save_graph(const KnowledgeGraph& graph, const fs::path& dir) {
  fs::create_directories(dir);
  write_json_file((dir / kGraphFile).string(), graph_to_json(graph));
}

// Loads a data directory. Persisted indexes are preferred; raw corpus.jsonl
// and graph.nt files are indexed on the fly when no persisted form exists.
inline Dataset load_dataset(const fs::path& dir, std::optional<Config> config = std::nullopt) {
  if (!fs::is_directory(dir)) throw IoError("data directory not found: " + dir.string());
  Dataset ds;
  if (config) ds.config = *config;
  else if (fs::exists(dir / kConfigFile)) ds.config = Config::from_json(read_json_file((dir / kConfigFile).string()));

  if (fs::exists(dir / kCorpusFile) && fs::exists(dir / kTextIndexFile)) {
    auto corpus = corpus_from_json(read_json_file((dir / kCorpusFile).string()));
    auto index = index_from_json(read_json_file((dir / kTextIndexFile).string()));
    ds.text = TextData{std::move(corpus), std::move(index)};
  } else if (fs::exists(dir / kRawCorpusFile)) {
    ds.text = build_text_data((dir / kRawCorpusFile).string(), ds.config);
  }

  if (fs::exists(dir / kGraphFile)) {
    ds.graph = graph_from_json(read_json_file((dir / kGraphFile).string()));
  } else if (fs::exists(dir / kRawGraphFile)) {
    ds.graph = build_graph_from_file((dir / kRawGraphFile).string(), ds.config);
  }
  if (!ds.text && !ds.graph) throw IoError("no corpus or graph found in " + dir.string());
  return ds;
}

inline AnswerBundle answer(std::string_view question, const Dataset& ds, BranchSelection kb = {},
                           std::optional<std::size_t> k = std::nullopt) {
  static const KnowledgeGraph kEmptyGraph;
  static const Corpus kEmptyCorpus;
  static const InvertedIndex kEmptyIndex;
  kb.kg = kb.kg && ds.graph.has_value();
  kb.text = kb.text && ds.text.has_value();
  return answer(question, ds.graph ? *ds.graph : kEmptyGraph, ds.text ? ds.text->corpus : kEmptyCorpus,
                ds.text ? ds.text->index : kEmptyIndex, ds.config, kb, k);
}

// ---------------------------------------------------------------------------
// Response JSON.

inline nlohmann::json to_json(const Enrichment& e) {
  nlohmann::json j = nlohmann::json::object();
  if (e.description) j["description"] = *e.description;
  if (e.image) j["image"] = *e.image;
  if (e.homepage) j["homepage"] = *e.homepage;
  if (e.coordinates) j["coordinates"] = {{"lat", e.coordinates->lat}, {"lon", e.coordinates->lon}};
  if (e.sitelink) j["sitelink"] = *e.sitelink;
  if (e.summary) j["summary"] = *e.summary;
  return j;
}

inline Enrichment enrichment_from_json(const nlohmann::json& j) {
  Enrichment e;
  auto opt = [&](const char* key) -> std::optional<std::string> {
    if (!j.contains(key)) return std::nullopt;
    return j.at(key).get<std::string>();
  };
  e.description = opt("description");
  e.image = opt("image");
  e.homepage = opt("homepage");
  if (j.contains("coordinates"))
    e.coordinates = Coordinates{j["coordinates"].at("lat").get<double>(), j["coordinates"].at("lon").get<double>()};
  e.sitelink = opt("sitelink");
  e.summary = opt("summary");
  return e;
}

inline nlohmann::json source_json(const ScoredSpan& span, const ParagraphSource& src, const std::string& deep_link) {
  return {{"url", src.url},           {"doc_id", src.doc_id},      {"para_id", span.para_id},
          {"start_char", span.start_char}, {"end_char", span.end_char}, {"deep_link", deep_link},
          {"paragraph", src.paragraph}};
}

// Response body of /qa:
//   {question, branch, confidence, interpretation, presentation,
//    answers: [{type: "entity", value, label, enrichment} |
//              {type: "span", value, score, source: {url, doc_id, para_id,
//               start_char, end_char, deep_link, paragraph}}],
//    low_confidence: [{branch, score, values, interpretation?, source?}],
//    diagnostics: [string]}
inline nlohmann::json bundle_to_json(const AnswerBundle& b) {
  nlohmann::json j;
  j["question"] = b.question;
  j["branch"] = to_string(b.branch);
  j["confidence"] = b.confidence;
  j["interpretation"] = b.kg_answer ? nlohmann::json(b.kg_answer->interpretation) : nlohmann::json(nullptr);
  nlohmann::json answers = nlohmann::json::array();
  if (b.kg_answer) {
    for (std::size_t i = 0; i < b.kg_answer->entities.size(); ++i) {
      const Term& t = b.kg_answer->entities[i];
      nlohmann::json a = {{"type", "entity"}, {"value", t.value}};
      a["label"] = i < b.kg_answer->labels.size() ? b.kg_answer->labels[i] : "";
      if (auto it = b.kg_answer->enrichment.find(t.value); it != b.kg_answer->enrichment.end())
        a["enrichment"] = to_json(it->second);
      answers.push_back(std::move(a));
    }
  }
  if (b.text_answer) {
    const auto& ta = *b.text_answer;
    answers.push_back({{"type", "span"},
                       {"value", ta.span.text},
                       {"score", ta.span.span_score},
                       {"source", source_json(ta.span, ta.source, ta.deep_link)}});
  }
  j["answers"] = std::move(answers);
  nlohmann::json low = nlohmann::json::array();
  for (const auto& c : b.low_confidence) {
    nlohmann::json lc = {{"branch", to_string(c.branch)}, {"score", c.score}, {"values", c.values}};
    if (c.branch == Branch::Kg) lc["interpretation"] = c.interpretation;
    if (c.span && c.source) lc["source"] = source_json(*c.span, *c.source, c.deep_link);
    low.push_back(std::move(lc));
  }
  j["low_confidence"] = std::move(low);
  j["presentation"] = to_string(b.presentation);
  j["diagnostics"] = b.diagnostics;
  return j;
}

inline Branch branch_from_string(std::string_view s) {
  if (s == "kg") return Branch::Kg;
  if (s == "text") return Branch::Text;
  if (s == "none") return Branch::None;
  throw ValidationError("unknown branch: " + std::string(s));
}

inline Presentation presentation_from_string(std::string_view s) {
  for (auto p : {Presentation::Panel, Presentation::Grid, Presentation::Map, Presentation::Span,
                 Presentation::Exploratory})
    if (to_string(p) == s) return p;
  throw ValidationError("unknown presentation: " + std::string(s));
}

namespace detail {

inline std::pair<ScoredSpan, ParagraphSource> span_from_source(const nlohmann::json& src, std::string text,
                                                               double score) {
  ScoredSpan span{src.at("para_id").get<std::string>(), src.at("start_char").get<std::size_t>(),
                  src.at("end_char").get<std::size_t>(), std::move(text), score};
  ParagraphSource ps{src.at("doc_id").get<std::string>(), src.at("url").get<std::string>(),
                     src.at("paragraph").get<std::string>()};
  return {std::move(span), std::move(ps)};
}

}  // namespace detail

// Inverse of bundle_to_json (reader internals are not part of the wire form).
inline AnswerBundle bundle_from_json(const nlohmann::json& j) {
  AnswerBundle b;
  try {
    b.question = j.at("question").get<std::string>();
    b.branch = branch_from_string(j.at("branch").get<std::string>());
    b.confidence = j.at("confidence").get<double>();
    b.presentation = presentation_from_string(j.at("presentation").get<std::string>());
    for (const auto& a : j.at("answers")) {
      auto type = a.at("type").get<std::string>();
      if (type == "entity") {
        if (!b.kg_answer) b.kg_answer = KgAnswer{{}, {}, j.at("interpretation").get<std::string>(), {}};
        auto value = a.at("value").get<std::string>();
        b.kg_answer->entities.push_back(Term::iri(value));
        b.kg_answer->labels.push_back(a.value("label", ""));
        if (a.contains("enrichment")) b.kg_answer->enrichment[value] = enrichment_from_json(a["enrichment"]);
      } else if (type == "span") {
        auto [span, src] = detail::span_from_source(a.at("source"), a.at("value").get<std::string>(),
                                                    a.at("score").get<double>());
        SpanAnswer sa;
        sa.span = std::move(span);
        sa.source = std::move(src);
        sa.deep_link = a["source"].at("deep_link").get<std::string>();
        b.text_answer = std::move(sa);
      } else {
        throw ValidationError("unknown answer type: " + type);
      }
    }
    for (const auto& l : j.at("low_confidence")) {
      LowConfidenceCandidate c;
      c.branch = branch_from_string(l.at("branch").get<std::string>());
      c.score = l.at("score").get<double>();
      c.values = l.at("values").get<std::vector<std::string>>();
      if (l.contains("interpretation")) c.interpretation = l["interpretation"].get<std::string>();
      if (l.contains("source")) {
        auto [span, src] = detail::span_from_source(l["source"], c.values.empty() ? "" : c.values.front(), c.score);
        c.deep_link = l["source"].at("deep_link").get<std::string>();
        c.span = std::move(span);
        c.source = std::move(src);
      }
      b.low_confidence.push_back(std::move(c));
    }
    b.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed answer bundle: ") + e.what());
  }
  return b;
}

// ---------------------------------------------------------------------------
// /qa request handling.

struct QaRequest {
  std::string question;
  BranchSelection kb;
  std::string lang = "en";
  std::optional<std::size_t> k;
};

struct QaResponse {
  int status = 200;
  nlohmann::json body;
};

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Parses "kg,text" style lists. Throws ValidationError on unknown or
// missing tokens.
inline BranchSelection parse_kb(std::string_view kb) {
  BranchSelection sel{false, false};
  std::size_t pos = 0;
  while (pos <= kb.size()) {
    auto comma = kb.find(',', pos);
    if (comma == std::string_view::npos) comma = kb.size();
    auto token = trim(kb.substr(pos, comma - pos));
    if (token == "kg") sel.kg = true;
    else if (token == "text") sel.text = true;
    else if (!token.empty()) throw ValidationError("unknown kb token: " + token);
    pos = comma + 1;
  }
  if (!sel.kg && !sel.text) throw ValidationError("kb must name at least one of kg, text");
  return sel;
}

// Builds a request from string parameters (query string or JSON body
// fields). The demo-style "user" parameter is accepted and ignored.
inline QaRequest parse_qa_request(const std::map<std::string, std::string>& params) {
  QaRequest r;
  auto get = [&](const char* key) -> std::optional<std::string> {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
  };
  r.question = trim(get("question").value_or(""));
  if (r.question.empty()) throw ValidationError("question must not be empty");
  r.kb = parse_kb(get("kb").value_or("kg,text"));
  r.lang = get("lang").value_or("en");
  if (r.lang != "en") throw ValidationError("unsupported lang '" + r.lang + "' (only 'en')");
  if (auto k = get("k")) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(*k, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != k->size() || v < 1) throw ValidationError("k must be a positive integer");
    r.k = static_cast<std::size_t>(v);
  }
  return r;
}

inline QaResponse error_response(int status, const std::string& message) {
  return {status, {{"error", message}}};
}

inline QaResponse handle_qa(const std::map<std::string, std::string>& params, const Dataset* ds) {
  QaRequest req;
  try {
    req = parse_qa_request(params);
  } catch (const ValidationError& e) {
    return error_response(400, e.what());
  }
  if (!ds) return error_response(503, "indexes not loaded");
  try {
    return {200, bundle_to_json(answer(req.question, *ds, req.kb, req.k))};
  } catch (const ValidationError& e) {
    return error_response(400, e.what());
  }
}

// JSON POST bodies carry the same fields as the query string.
inline std::map<std::string, std::string> params_from_json_body(const std::string& body) {
  std::map<std::string, std::string> params;
  auto j = nlohmann::json::parse(body);
  if (!j.is_object()) throw ValidationError("request body must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (value.is_string()) params[key] = value.get<std::string>();
    else if (value.is_number_integer()) params[key] = std::to_string(value.get<long long>());
    else if (value.is_array() && key == "kb") {
      std::string joined;
      for (const auto& v : value) joined += (joined.empty() ? "" : ",") + v.get<std::string>();
      params[key] = joined;
    } else {
      throw ValidationError("unsupported value for '" + key + "'");
    }
  }
  return params;
}

// Registers /qa (GET and POST) and /health on `server`. `dataset` may be
// null, in which case /qa answers 503.
inline void install_routes(httplib::Server& server, std::shared_ptr<const Dataset> dataset,
                           std::string cors_origin = "*") {
  auto send = [cors_origin](httplib::Response& res, const QaResponse& r) {
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", cors_origin);
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get("/qa", [dataset, send](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> params;
    for (const auto& [k, v] : req.params) params.emplace(k, v);
    send(res, handle_qa(params, dataset.get()));
  });
  server.Post("/qa", [dataset, send](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> params;
    try {
      params = params_from_json_body(req.body);
    } catch (const std::exception& e) {
      send(res, error_response(400, std::string("invalid JSON body: ") + e.what()));
      return;
    }
    send(res, handle_qa(params, dataset.get()));
  });
  server.Options("/qa", [cors_origin](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
    res.set_header("Access-Control-Allow-Origin", cors_origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });
  server.Get("/health", [dataset](const httplib::Request&, httplib::Response& res) {
    res.status = dataset ? 200 : 503;
    res.set_content(dataset ? "ok" : "not loaded", "text/plain");
  });
}

}  // namespace siteqa
