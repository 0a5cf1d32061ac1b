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
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "siteqa/config.hpp"
#include "siteqa/corpus.hpp"
#include "siteqa/error.hpp"
#include "siteqa/kgstore.hpp"
#include "siteqa/ranker.hpp"
#include "siteqa/reader.hpp"
#include "siteqa/remote_reader.hpp"
#include "siteqa/retriever.hpp"
#include "siteqa/url.hpp"

namespace siteqa {

enum class Branch { Kg, Text, None };
enum class Presentation { Panel, Grid, Map, Span, Exploratory };

inline std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::Kg: return "kg";
    case Branch::Text: return "text";
    case Branch::None: break;
  }
  return "none";
}

inline std::string_view to_string(Presentation p) {
  switch (p) {
    case Presentation::Panel: return "panel";
    case Presentation::Grid: return "grid";
    case Presentation::Map: return "map";
    case Presentation::Span: return "span";
    case Presentation::Exploratory: break;
  }
  return "exploratory";
}

struct Coordinates {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const Coordinates&, const Coordinates&) = default;
};

// Accepts WKT "Point(lon lat)" (optionally preceded by an SRS IRI) and
// "lat,lon". Out-of-range values are rejected.
inline std::optional<Coordinates> parse_coordinates(std::string_view text) {
  std::string s = ascii_lower(text);
  double a = 0.0;
  double b = 0.0;
  Coordinates c;
  if (auto p = s.find("point("); p != std::string::npos) {
    std::istringstream in(s.substr(p + 6));
    if (!(in >> a >> b)) return std::nullopt;
    c = {b, a};
  } else {
    auto comma = s.find(',');
    if (comma == std::string::npos) return std::nullopt;
    std::istringstream la(s.substr(0, comma));
    std::istringstream lo(s.substr(comma + 1));
    if (!(la >> a) || !(lo >> b)) return std::nullopt;
    c = {a, b};
  }
  if (!std::isfinite(c.lat) || !std::isfinite(c.lon) || c.lat < -90.0 || c.lat > 90.0 || c.lon < -180.0 ||
      c.lon > 180.0)
    return std::nullopt;
  return c;
}

struct Enrichment {
  std::optional<std::string> description;
  std::optional<std::string> image;
  std::optional<std::string> homepage;
  std::optional<Coordinates> coordinates;
  std::optional<std::string> sitelink;
  std::optional<std::string> summary;

  bool empty() const {
    return !description && !image && !homepage && !coordinates && !sitelink && !summary;
  }

  friend bool operator==(const Enrichment&, const Enrichment&) = default;
};

namespace detail {

inline std::optional<std::string> url_value(const KnowledgeGraph& g, TermId subject,
                                            const std::optional<std::string>& pred) {
  if (!pred) return std::nullopt;
  for (TermId o : g.objects(subject, *pred)) {
    const Term& t = g.term(o);
    if ((t.is_iri() || t.is_literal()) && is_absolute_url(t.value)) return t.value;
  }
  return std::nullopt;
}

inline std::optional<std::string> text_value(const KnowledgeGraph& g, TermId subject,
                                             const std::optional<std::string>& pred) {
  if (!pred) return std::nullopt;
  std::optional<std::string> fallback;
  for (TermId o : g.objects(subject, *pred)) {
    const Term& t = g.term(o);
    if (!t.is_literal()) continue;
    if (t.lang.empty() || t.lang == "en" || t.lang.starts_with("en-")) return t.value;
    if (!fallback) fallback = t.value;
  }
  return fallback;
}

}  // namespace detail

// Contextual metadata for each IRI in `entities`, read from the graph's
// configured enrichment predicates. The summary is the first paragraph of the
// corpus document whose URL equals the entity's sitelink.
inline std::map<std::string, Enrichment> enrich(std::span<const Term> entities, const KnowledgeGraph& graph,
                                                const Corpus* corpus) {
  std::map<std::string, Enrichment> out;
  const auto& props = graph.enrichment_props();
  for (const auto& e : entities) {
    if (!e.is_iri()) continue;
    Enrichment en;
    if (auto id = graph.find(e)) {
      en.description = detail::text_value(graph, *id, props.predicate("description"));
      en.image = detail::url_value(graph, *id, props.predicate("image"));
      en.homepage = detail::url_value(graph, *id, props.predicate("homepage"));
      en.sitelink = detail::url_value(graph, *id, props.predicate("sitelink"));
      if (auto pred = props.predicate("coordinates")) {
        for (TermId o : graph.objects(*id, *pred)) {
          const Term& t = graph.term(o);
          if (!t.is_literal()) continue;
          if ((en.coordinates = parse_coordinates(t.value))) break;
        }
      }
      if (en.sitelink && corpus) {
        if (const Document* doc = corpus->document_by_url(*en.sitelink))
          if (const Paragraph* p = corpus->first_paragraph(doc->doc_id)) en.summary = p->text;
      }
    }
    out.emplace(e.value, std::move(en));
  }
  return out;
}

inline std::map<std::string, Enrichment> enrich(const ResultSet& entities, const KnowledgeGraph& graph,
                                                const Corpus* corpus) {
  return enrich(std::span<const Term>(entities.bindings), graph, corpus);
}

// ---------------------------------------------------------------------------
// Branch outcomes and the answer bundle.

struct KgCandidate {
  std::string interpretation;  // canonical query serialization
  std::vector<Term> answers;
  std::vector<std::string> labels;  // display label per answer, empty when unknown
  double score = 0.0;
  double confidence = 0.0;
};

struct KgOutcome {
  std::vector<KgCandidate> ranked;

  double confidence() const { return ranked.empty() ? 0.0 : ranked.front().confidence; }
};

struct ParagraphSource {
  std::string doc_id;
  std::string url;
  std::string paragraph;
};

struct TextOutcome {
  TextAnswer answer;
  std::map<std::string, ParagraphSource> sources;  // by para_id
  std::optional<std::string> error;                // reader failure, if any
};

struct KgAnswer {
  std::vector<Term> entities;
  std::vector<std::string> labels;
  std::string interpretation;
  std::map<std::string, Enrichment> enrichment;
};

struct SpanAnswer {
  ScoredSpan span;
  ParagraphSource source;
  std::string deep_link;
  TextAnswer reader_output;
};

struct LowConfidenceCandidate {
  Branch branch = Branch::None;
  double score = 0.0;
  std::vector<std::string> values;
  std::string interpretation;               // kg candidates
  std::optional<ScoredSpan> span;           // text candidates
  std::optional<ParagraphSource> source;    // text candidates
  std::string deep_link;                    // text candidates
};

struct AnswerBundle {
  std::string question;
  Branch branch = Branch::None;
  double confidence = 0.0;
  std::optional<KgAnswer> kg_answer;
  std::optional<SpanAnswer> text_answer;
  std::vector<LowConfidenceCandidate> low_confidence;
  Presentation presentation = Presentation::Exploratory;
  std::vector<std::string> diagnostics;
};

inline Presentation classify_presentation(const AnswerBundle& bundle) {
  switch (bundle.branch) {
    case Branch::Kg: {
      if (!bundle.kg_answer || bundle.kg_answer->entities.size() <= 1) return Presentation::Panel;
      const auto& en = bundle.kg_answer->enrichment;
      bool any_coords = std::any_of(en.begin(), en.end(), [](const auto& kv) { return kv.second.coordinates.has_value(); });
      return any_coords ? Presentation::Map : Presentation::Grid;
    }
    case Branch::Text:
      return Presentation::Span;
    case Branch::None:
      break;
  }
  return Presentation::Exploratory;
}

struct FallbackOptions {
  double theta_kg = 0.5;
  double theta_text = 0.5;
  std::size_t per_branch = 5;
  bool use_kg = true;
  bool use_text = true;
};

namespace detail {

inline SpanAnswer make_span_answer(const ScoredSpan& span, const TextOutcome& text) {
  SpanAnswer sa;
  sa.span = span;
  if (auto it = text.sources.find(span.para_id); it != text.sources.end()) sa.source = it->second;
  sa.deep_link = sa.source.url.empty() ? std::string() : text_fragment_link(sa.source.url, span.text);
  sa.reader_output = text.answer;
  return sa;
}

}  // namespace detail

// The fallback pipeline: the KG branch answers when its confidence reaches
// theta_kg; otherwise the text branch answers when its confidence reaches
// theta_text; otherwise nothing is answered and the best candidates of both
// branches are kept as low-confidence suggestions. The text branch is only
// invoked when the KG branch did not answer.
//
// kg_branch: () -> KgOutcome; text_branch: () -> TextOutcome.
template <typename KgBranch, typename TextBranch>
AnswerBundle run_fallback(std::string question, KgBranch&& kg_branch, TextBranch&& text_branch,
                          const FallbackOptions& opts) {
  AnswerBundle bundle;
  bundle.question = std::move(question);

  std::optional<KgOutcome> kg;
  if (opts.use_kg) {
    kg = kg_branch();
    const double c = kg->confidence();
    if (!kg->ranked.empty() && c >= opts.theta_kg) {
      const auto& top = kg->ranked.front();
      bundle.branch = Branch::Kg;
      bundle.confidence = c;
      bundle.kg_answer = KgAnswer{top.answers, top.labels, top.interpretation, {}};
      bundle.presentation = classify_presentation(bundle);
      return bundle;
    }
  }

  std::optional<TextOutcome> text;
  if (opts.use_text) {
    try {
      text = text_branch();
    } catch (const ReaderUnavailable& e) {
      text = TextOutcome{};
      text->error = e.what();
    } catch (const ProtocolError& e) {
      text = TextOutcome{};
      text->error = e.what();
    }
    if (text->error) bundle.diagnostics.push_back(*text->error);
    const auto& ans = text->answer;
    if (!text->error && ans.best && ans.confidence >= opts.theta_text) {
      bundle.branch = Branch::Text;
      bundle.confidence = ans.confidence;
      bundle.text_answer = detail::make_span_answer(*ans.best, *text);
      bundle.presentation = classify_presentation(bundle);
      return bundle;
    }
  }

  bundle.branch = Branch::None;
  bundle.confidence = 0.0;
  if (kg) {
    for (std::size_t i = 0; i < kg->ranked.size() && i < opts.per_branch; ++i) {
      const auto& c = kg->ranked[i];
      LowConfidenceCandidate lc;
      lc.branch = Branch::Kg;
      lc.score = c.confidence;
      for (const auto& a : c.answers) lc.values.push_back(a.value);
      lc.interpretation = c.interpretation;
      bundle.low_confidence.push_back(std::move(lc));
    }
  }
  if (text && !text->error) {
    const auto& cands = text->answer.candidates;
    for (std::size_t i = 0; i < cands.size() && i < opts.per_branch; ++i) {
      auto sa = detail::make_span_answer(cands[i], *text);
      LowConfidenceCandidate lc;
      lc.branch = Branch::Text;
      lc.score = cands[i].span_score;
      lc.values = {cands[i].text};
      lc.span = cands[i];
      lc.source = sa.source;
      lc.deep_link = sa.deep_link;
      bundle.low_confidence.push_back(std::move(lc));
    }
  }
  bundle.presentation = classify_presentation(bundle);
  return bundle;
}

// ---------------------------------------------------------------------------
// Real branches over loaded indexes.

inline KgOutcome kg_branch(std::string_view question, const KnowledgeGraph& graph, const Config& cfg) {
  KgOutcome out;
  auto ranked = rank(featurized_candidates(question, graph, cfg.querygen, cfg.max_ngram), cfg.weights);
  for (auto& r : ranked) {
    KgCandidate c;
    c.interpretation = r.query.serialization;
    for (TermId id : r.query.answers) {
      c.answers.push_back(graph.term(id));
      c.labels.push_back(graph.display_label(id).value_or(""));
    }
    c.score = r.score;
    c.confidence = logistic(r.score);
    out.ranked.push_back(std::move(c));
  }
  return out;
}

inline TextOutcome text_branch(std::string_view question, const Corpus& corpus, const InvertedIndex& index,
                               const Config& cfg, std::size_t k) {
  TextOutcome out;
  auto retrieved = retrieve(question, k, index);
  for (const auto& r : retrieved) {
    const Paragraph* p = corpus.find_paragraph(r.para_id);
    if (!p) continue;
    const Document* d = corpus.store().find(p->doc_id);
    out.sources.emplace(r.para_id, ParagraphSource{p->doc_id, d ? d->source_url : "", p->text});
  }
  if (cfg.reader_mode == ReaderMode::Remote)
    out.answer = remote_read(question, retrieved, corpus, cfg.reader_endpoint, cfg.reader_timeout, cfg.reader);
  else
    out.answer = read(question, retrieved, corpus, cfg.reader);
  return out;
}

struct BranchSelection {
  bool kg = true;
  bool text = true;
};

// Full question answering over loaded indexes: fallback, then enrichment of
// KG entities and presentation choice.
inline AnswerBundle answer(std::string_view question, const KnowledgeGraph& graph, const Corpus& corpus,
                           const InvertedIndex& index, const Config& cfg, BranchSelection kb = {},
                           std::optional<std::size_t> k = std::nullopt) {
  FallbackOptions fo;
  fo.theta_kg = cfg.weights.theta_kg;
  fo.theta_text = cfg.theta_text;
  fo.per_branch = cfg.low_confidence_per_branch;
  fo.use_kg = kb.kg;
  fo.use_text = kb.text;
  const std::size_t depth = k.value_or(cfg.retrieval_depth);
  auto bundle = run_fallback(
      std::string(question), [&] { return kg_branch(question, graph, cfg); },
      [&] { return text_branch(question, corpus, index, cfg, depth); }, fo);
  if (bundle.kg_answer) {
    bundle.kg_answer->enrichment = enrich(std::span<const Term>(bundle.kg_answer->entities), graph, &corpus);
    bundle.presentation = classify_presentation(bundle);
  }
  return bundle;
}

}  // namespace siteqa
