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
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "siteqa/error.hpp"
#include "siteqa/tokenizer.hpp"

namespace siteqa {

// RDF term. Blank nodes are kept as opaque identifiers.
struct Term {
  enum class Kind : std::uint8_t { Iri, Blank, Literal };

  Kind kind = Kind::Iri;
  std::string value;     // IRI, blank label (without "_:") or literal lexical form
  std::string lang;      // lowercase language tag, literals only
  std::string datatype;  // datatype IRI, literals only

  static Term iri(std::string v) { return {Kind::Iri, std::move(v), {}, {}}; }
  static Term blank(std::string v) { return {Kind::Blank, std::move(v), {}, {}}; }
  static Term literal(std::string v, std::string lang = {}, std::string datatype = {}) {
    return {Kind::Literal, std::move(v), std::move(lang), std::move(datatype)};
  }

  bool is_iri() const { return kind == Kind::Iri; }
  bool is_literal() const { return kind == Kind::Literal; }

  friend bool operator==(const Term&, const Term&) = default;
};

// N-Triples form of a term; also the key terms are ordered by.
inline std::string to_ntriples(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Iri:
      return "<" + t.value + ">";
    case Term::Kind::Blank:
      return "_:" + t.value;
    case Term::Kind::Literal:
      break;
  }
  std::string out = "\"";
  for (char c : t.value) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  if (!t.lang.empty()) out += "@" + t.lang;
  else if (!t.datatype.empty()) out += "^^<" + t.datatype + ">";
  return out;
}

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
};

inline std::string to_ntriples(const Triple& t) {
  return to_ntriples(t.subject) + " " + to_ntriples(t.predicate) + " " + to_ntriples(t.object) + " .";
}

inline void write_ntriples(std::ostream& out, std::span<const Triple> triples) {
  for (const auto& t : triples) out << to_ntriples(t) << '\n';
}

namespace detail {

inline bool looks_absolute_iri(std::string_view iri) {
  auto colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  for (std::size_t i = 0; i < colon; ++i) {
    char c = iri[i];
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (i > 0 && ((c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.'));
    if (!ok) return false;
  }
  return true;
}

inline void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Recursive-descent reader for one N-Triples line.
class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no) : s_(line), line_no_(line_no) {}

  // Empty optional for blank and comment lines.
  std::optional<Triple> parse() {
    skip_ws();
    if (at_end() || peek() == '#') return std::nullopt;
    Triple t;
    t.subject = subject();
    require_ws();
    t.predicate = iri_term();
    if (!looks_absolute_iri(t.predicate.value)) fail("predicate is not an absolute IRI");
    require_ws();
    t.object = object();
    skip_ws();
    if (at_end() || peek() != '.') fail("expected '.' at end of triple");
    ++pos_;
    skip_ws();
    if (!at_end() && peek() != '#') fail("unexpected content after '.'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_no_, pos_ + 1); }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }

  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++pos_;
  }

  void require_ws() {
    std::size_t before = pos_;
    skip_ws();
    if (pos_ == before && !at_end() && peek() != '"' && peek() != '<') fail("expected whitespace");
  }

  Term subject() {
    if (!at_end() && peek() == '_') return blank();
    Term t = iri_term();
    if (!looks_absolute_iri(t.value)) fail("subject is not an absolute IRI");
    return t;
  }

  Term object() {
    if (at_end()) fail("missing object");
    if (peek() == '<') return iri_term();
    if (peek() == '_') return blank();
    if (peek() == '"') return literal();
    fail("expected IRI, blank node or literal");
  }

  Term blank() {
    if (s_.substr(pos_, 2) != "_:") fail("expected blank node '_:'");
    pos_ += 2;
    std::size_t start = pos_;
    while (!at_end() && peek() != ' ' && peek() != '\t' && peek() != '.') ++pos_;
    // A trailing '.' directly after the label belongs to the statement.
    if (pos_ == start) fail("empty blank node label");
    return Term::blank(std::string(s_.substr(start, pos_ - start)));
  }

  std::uint32_t hex(std::size_t digits) {
    if (pos_ + digits > s_.size()) fail("truncated unicode escape");
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      char c = s_[pos_ + i];
      v <<= 4;
      if (c >= '0' && c <= '9') v |= static_cast<std::uint32_t>(c - '0');
      else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint32_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') v |= static_cast<std::uint32_t>(c - 'A' + 10);
      else fail("invalid hex digit in unicode escape");
    }
    pos_ += digits;
    return v;
  }

  Term iri_term() {
    if (at_end() || peek() != '<') fail("expected '<'");
    ++pos_;
    std::string value;
    while (true) {
      if (at_end()) fail("unterminated IRI");
      char c = peek();
      if (c == '>') break;
      if (c == ' ' || c == '<' || c == '"') fail("invalid character in IRI");
      if (c == '\\') {
        ++pos_;
        if (at_end()) fail("dangling escape in IRI");
        char e = peek();
        ++pos_;
        if (e == 'u') append_utf8(value, hex(4));
        else if (e == 'U') append_utf8(value, hex(8));
        else fail("invalid escape in IRI");
        continue;
      }
      value += c;
      ++pos_;
    }
    ++pos_;
    if (value.empty()) fail("empty IRI");
    return Term::iri(std::move(value));
  }

  Term literal() {
    ++pos_;  // opening quote
    std::string value;
    while (true) {
      if (at_end()) fail("unterminated literal");
      char c = peek();
      if (c == '"') break;
      if (c == '\\') {
        ++pos_;
        if (at_end()) fail("dangling escape in literal");
        char e = peek();
        ++pos_;
        switch (e) {
          case 't': value += '\t'; break;
          case 'b': value += '\b'; break;
          case 'n': value += '\n'; break;
          case 'r': value += '\r'; break;
          case 'f': value += '\f'; break;
          case '"': value += '"'; break;
          case '\'': value += '\''; break;
          case '\\': value += '\\'; break;
          case 'u': append_utf8(value, hex(4)); break;
          case 'U': append_utf8(value, hex(8)); break;
          default: --pos_; fail("invalid escape in literal");
        }
        continue;
      }
      value += c;
      ++pos_;
    }
    ++pos_;  // closing quote
    if (!at_end() && peek() == '@') {
      ++pos_;
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) ++pos_;
      if (pos_ == start) fail("empty language tag");
      return Term::literal(std::move(value), ascii_lower(s_.substr(start, pos_ - start)));
    }
    if (s_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      Term dt = iri_term();
      return Term::literal(std::move(value), {}, std::move(dt.value));
    }
    return Term::literal(std::move(value));
  }

  std::string_view s_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses a whole N-Triples stream. Any malformed line aborts the parse.
inline std::vector<Triple> parse_ntriples(std::istream& in) {
  std::vector<Triple> triples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto t = detail::LineParser(line, line_no).parse()) triples.push_back(std::move(*t));
  }
  return triples;
}

// Maps presentation roles (description, image, homepage, coordinates,
// sitelink) to the predicate IRIs that carry them in a given graph.
struct EnrichmentProps {
  static constexpr std::array<std::string_view, 5> kRoles = {"coordinates", "description", "homepage",
                                                             "image", "sitelink"};
  std::map<std::string, std::string> by_role;

  std::optional<std::string> predicate(std::string_view role) const {
    auto it = by_role.find(std::string(role));
    if (it == by_role.end()) return std::nullopt;
    return it->second;
  }

  static EnrichmentProps from_json(const nlohmann::json& j) {
    EnrichmentProps props;
    for (const auto& [role, iri] : j.items()) {
      if (std::find(kRoles.begin(), kRoles.end(), role) == kRoles.end())
        throw ValidationError("unknown enrichment role: " + role);
      props.by_role[role] = iri.get<std::string>();
    }
    return props;
  }

  nlohmann::json to_json() const { return nlohmann::json(by_role); }

  friend bool operator==(const EnrichmentProps&, const EnrichmentProps&) = default;
};

inline const std::vector<std::string>& default_label_predicates() {
  static const std::vector<std::string> preds = {"http://www.w3.org/2000/01/rdf-schema#label",
                                                 "http://www.w3.org/2004/02/skos/core#altLabel"};
  return preds;
}

using TermId = std::uint32_t;

enum class ElementKind : std::uint8_t { Node, Relation };

inline std::string_view to_string(ElementKind k) { return k == ElementKind::Node ? "node" : "relation"; }

struct LabelEntry {
  TermId element = 0;
  ElementKind kind = ElementKind::Node;
  std::string label;

  friend auto operator<=>(const LabelEntry&, const LabelEntry&) = default;
};

struct Edge {
  TermId predicate = 0;
  TermId neighbor = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct SubjectObject {
  TermId subject = 0;
  TermId object = 0;

  friend auto operator<=>(const SubjectObject&, const SubjectObject&) = default;
};

struct TripleIds {
  TermId s = 0;
  TermId p = 0;
  TermId o = 0;

  friend auto operator<=>(const TripleIds&, const TripleIds&) = default;
};

// Immutable triple store with a stemmed label index and adjacency in both
// directions. Term ids follow the lexical order of N-Triples forms, so two
// graphs built from the same triple set are identical.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  std::size_t num_triples() const { return triples_.size(); }
  std::size_t num_terms() const { return terms_.size(); }
  const Term& term(TermId id) const { return terms_[id]; }
  const std::vector<Term>& terms() const { return terms_; }
  const std::vector<TripleIds>& triple_ids() const { return triples_; }

  std::optional<TermId> find(const Term& t) const {
    auto it = ids_.find(to_ntriples(t));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<TermId> find_iri(std::string_view iri) const { return find(Term::iri(std::string(iri))); }

  std::span<const Edge> out_edges(TermId id) const { return out_adj_[id]; }
  std::span<const Edge> in_edges(TermId id) const { return in_adj_[id]; }
  // (subject, object) pairs for a predicate.
  std::span<const SubjectObject> predicate_pairs(TermId pred) const {
    auto it = by_pred_.find(pred);
    if (it == by_pred_.end()) return {};
    return it->second;
  }
  bool is_predicate(TermId id) const { return by_pred_.contains(id); }

  std::span<const LabelEntry> lookup_label(const std::string& stem_phrase) const {
    auto it = labels_.find(stem_phrase);
    if (it == labels_.end()) return {};
    return it->second;
  }
  const std::map<std::string, std::vector<LabelEntry>>& labels() const { return labels_; }

  const std::vector<std::string>& label_predicates() const { return label_predicates_; }
  const EnrichmentProps& enrichment_props() const { return enrichment_; }

  std::vector<Triple> triples() const {
    std::vector<Triple> out;
    out.reserve(triples_.size());
    for (const auto& t : triples_) out.push_back({terms_[t.s], terms_[t.p], terms_[t.o]});
    return out;
  }

  // Literal objects of (subject, predicate); empty when either is unknown.
  std::vector<TermId> objects(TermId subject, std::string_view predicate_iri) const {
    std::vector<TermId> out;
    auto pred = find_iri(predicate_iri);
    if (!pred) return out;
    for (const auto& e : out_edges(subject))
      if (e.predicate == *pred) out.push_back(e.neighbor);
    return out;
  }

  // Preferred display label: first English or untagged label literal.
  std::optional<std::string> display_label(TermId id) const {
    std::optional<std::string> fallback;
    for (const auto& pred_iri : label_predicates_) {
      for (TermId o : objects(id, pred_iri)) {
        const Term& t = terms_[o];
        if (!t.is_literal()) continue;
        if (t.lang.empty() || t.lang == "en" || t.lang.starts_with("en-")) return t.value;
        if (!fallback) fallback = t.value;
      }
    }
    return fallback;
  }

  friend bool operator==(const KnowledgeGraph& a, const KnowledgeGraph& b) {
    return a.terms_ == b.terms_ && a.triples_ == b.triples_ && a.labels_ == b.labels_ &&
           a.out_adj_ == b.out_adj_ && a.in_adj_ == b.in_adj_ &&
           a.label_predicates_ == b.label_predicates_ && a.enrichment_ == b.enrichment_;
  }

  friend KnowledgeGraph build_graph(std::span<const Triple> triples,
                                    std::span<const std::string> label_predicates,
                                    const EnrichmentProps& enrichment);

 private:
  std::vector<Term> terms_;
  std::unordered_map<std::string, TermId> ids_;
  std::vector<TripleIds> triples_;
  std::vector<std::vector<Edge>> out_adj_;
  std::vector<std::vector<Edge>> in_adj_;
  std::unordered_map<TermId, std::vector<SubjectObject>> by_pred_;
  std::map<std::string, std::vector<LabelEntry>> labels_;
  std::vector<std::string> label_predicates_;
  EnrichmentProps enrichment_;
};

// Label phrases are tokenized and stemmed exactly like questions, stopwords
// included. An IRI that is used as a predicate anywhere is a relation.
inline KnowledgeGraph build_graph(std::span<const Triple> triples,
                                  std::span<const std::string> label_predicates,
                                  const EnrichmentProps& enrichment = {}) {
  KnowledgeGraph g;
  g.label_predicates_.assign(label_predicates.begin(), label_predicates.end());
  g.enrichment_ = enrichment;

  std::set<std::string> keys;
  for (const auto& t : triples) {
    if (!t.subject.is_literal() && t.predicate.is_iri()) {
      keys.insert(to_ntriples(t.subject));
      keys.insert(to_ntriples(t.predicate));
      keys.insert(to_ntriples(t.object));
    } else {
      throw ValidationError("invalid triple: " + to_ntriples(t));
    }
  }
  std::unordered_map<std::string, const Term*> by_key;
  for (const auto& t : triples) {
    by_key.emplace(to_ntriples(t.subject), &t.subject);
    by_key.emplace(to_ntriples(t.predicate), &t.predicate);
    by_key.emplace(to_ntriples(t.object), &t.object);
  }
  for (const auto& k : keys) {
    g.ids_.emplace(k, static_cast<TermId>(g.terms_.size()));
    g.terms_.push_back(*by_key.at(k));
  }
  for (const auto& t : triples)
    g.triples_.push_back({g.ids_.at(to_ntriples(t.subject)), g.ids_.at(to_ntriples(t.predicate)),
                          g.ids_.at(to_ntriples(t.object))});
  std::sort(g.triples_.begin(), g.triples_.end());
  g.triples_.erase(std::unique(g.triples_.begin(), g.triples_.end()), g.triples_.end());

  g.out_adj_.assign(g.terms_.size(), {});
  g.in_adj_.assign(g.terms_.size(), {});
  for (const auto& t : g.triples_) {
    g.out_adj_[t.s].push_back({t.p, t.o});
    g.in_adj_[t.o].push_back({t.p, t.s});
    g.by_pred_[t.p].push_back({t.s, t.o});
  }
  for (auto& adj : g.in_adj_) std::sort(adj.begin(), adj.end());

  std::set<TermId> label_pred_ids;
  for (const auto& iri : g.label_predicates_)
    if (auto id = g.find_iri(iri)) label_pred_ids.insert(*id);
  for (const auto& t : g.triples_) {
    if (!label_pred_ids.contains(t.p)) continue;
    const Term& lit = g.terms_[t.o];
    if (!lit.is_literal() || !g.terms_[t.s].is_iri()) continue;
    auto tokens = tokenize(lit.value);
    if (tokens.empty()) continue;
    ElementKind kind = g.is_predicate(t.s) ? ElementKind::Relation : ElementKind::Node;
    g.labels_[stem_phrase(tokens)].push_back({t.s, kind, lit.value});
  }
  for (auto& [phrase, entries] : g.labels_) {
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  }
  return g;
}

inline constexpr int kGraphFormatVersion = 1;

inline nlohmann::json graph_to_json(const KnowledgeGraph& g) {
  nlohmann::json lines = nlohmann::json::array();
  for (const auto& t : g.triples()) lines.push_back(to_ntriples(t));
  return {{"format", "siteqa-graph"},
          {"version", kGraphFormatVersion},
          {"label_predicates", g.label_predicates()},
          {"enrichment", g.enrichment_props().to_json()},
          {"triples", lines}};
}

inline KnowledgeGraph graph_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "siteqa-graph" || j.value("version", 0) != kGraphFormatVersion)
    throw ValidationError("unsupported graph file format");
  std::vector<Triple> triples;
  std::size_t n = 0;
  for (const auto& line : j.at("triples")) {
    auto t = detail::LineParser(line.get<std::string>(), ++n).parse();
    if (!t) throw ValidationError("graph file: empty triple entry");
    triples.push_back(std::move(*t));
  }
  auto preds = j.at("label_predicates").get<std::vector<std::string>>();
  return build_graph(triples, preds, EnrichmentProps::from_json(j.at("enrichment")));
}

// ---------------------------------------------------------------------------
// Conjunctive triple patterns.

struct Variable {
  std::string name;  // without the leading '?'

  friend auto operator<=>(const Variable&, const Variable&) = default;
};

using PatternSlot = std::variant<Term, Variable>;

struct TriplePattern {
  PatternSlot subject;
  PatternSlot predicate;
  PatternSlot object;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

struct GraphPattern {
  std::vector<TriplePattern> patterns;
  std::string projection;

  friend bool operator==(const GraphPattern&, const GraphPattern&) = default;
};

// Distinct bindings of the projection variable, ascending by N-Triples form.
struct ResultSet {
  std::vector<Term> bindings;

  bool empty() const { return bindings.empty(); }
  std::size_t size() const { return bindings.size(); }

  friend bool operator==(const ResultSet&, const ResultSet&) = default;
};

namespace detail {

class PatternEvaluator {
 public:
  PatternEvaluator(const GraphPattern& q, const KnowledgeGraph& g) : g_(g) {
    std::map<std::string, int> var_index;
    auto compile = [&](const PatternSlot& slot, Slot& out) -> bool {
      if (const auto* v = std::get_if<Variable>(&slot)) {
        auto [it, inserted] = var_index.emplace(v->name, static_cast<int>(var_index.size()));
        out.var = it->second;
        return true;
      }
      auto id = g.find(std::get<Term>(slot));
      if (!id) return false;
      out.constant = *id;
      return true;
    };
    for (const auto& tp : q.patterns) {
      Compiled c;
      if (!compile(tp.subject, c.s) || !compile(tp.predicate, c.p) || !compile(tp.object, c.o))
        satisfiable_ = false;
      patterns_.push_back(c);
    }
    auto proj = var_index.find(q.projection);
    if (proj == var_index.end())
      throw ValidationError("projection variable ?" + q.projection + " does not occur in the pattern");
    projection_ = proj->second;
    binding_.assign(var_index.size(), kUnbound);
    done_.assign(patterns_.size(), false);
  }

  std::vector<TermId> run() {
    if (satisfiable_) search(0);
    return {results_.begin(), results_.end()};
  }

 private:
  static constexpr TermId kUnbound = static_cast<TermId>(-1);

  struct Slot {
    int var = -1;
    TermId constant = 0;
  };
  struct Compiled {
    Slot s, p, o;
  };

  std::optional<TermId> value(const Slot& slot) const {
    if (slot.var < 0) return slot.constant;
    if (binding_[slot.var] == kUnbound) return std::nullopt;
    return binding_[slot.var];
  }

  int bound_count(const Compiled& c) const {
    return static_cast<int>(value(c.s).has_value()) + static_cast<int>(value(c.p).has_value()) +
           static_cast<int>(value(c.o).has_value());
  }

  // Binds slot to id; returns false on conflict. Records new bindings in `set`.
  bool bind(const Slot& slot, TermId id, std::vector<int>& set) {
    if (slot.var < 0) return slot.constant == id;
    TermId& b = binding_[slot.var];
    if (b == kUnbound) {
      b = id;
      set.push_back(slot.var);
      return true;
    }
    return b == id;
  }

  void try_triple(std::size_t depth, const Compiled& c, TermId s, TermId p, TermId o) {
    std::vector<int> set;
    if (bind(c.s, s, set) && bind(c.p, p, set) && bind(c.o, o, set)) search(depth + 1);
    for (int v : set) binding_[v] = kUnbound;
  }

  void search(std::size_t depth) {
    if (depth == patterns_.size()) {
      results_.insert(binding_[projection_]);
      return;
    }
    // Most-bound pattern first.
    std::size_t pick = patterns_.size();
    int best = -1;
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
      if (done_[i]) continue;
      int bc = bound_count(patterns_[i]);
      if (bc > best) {
        best = bc;
        pick = i;
      }
    }
    const Compiled& c = patterns_[pick];
    done_[pick] = true;
    auto s = value(c.s);
    auto p = value(c.p);
    auto o = value(c.o);
    if (s) {
      for (const auto& e : g_.out_edges(*s)) try_triple(depth, c, *s, e.predicate, e.neighbor);
    } else if (o) {
      for (const auto& e : g_.in_edges(*o)) try_triple(depth, c, e.neighbor, e.predicate, *o);
    } else if (p) {
      for (const auto& e : g_.predicate_pairs(*p)) try_triple(depth, c, e.subject, *p, e.object);
    } else {
      for (const auto& t : g_.triple_ids()) try_triple(depth, c, t.s, t.p, t.o);
    }
    done_[pick] = false;
  }

  const KnowledgeGraph& g_;
  std::vector<Compiled> patterns_;
  std::vector<TermId> binding_;
  std::vector<bool> done_;
  std::set<TermId> results_;
  int projection_ = 0;
  bool satisfiable_ = true;
};

}  // namespace detail

// Ids of the projection bindings, ascending by id (which is lexical order).
inline std::vector<TermId> execute_ids(const GraphPattern& query, const KnowledgeGraph& graph) {
  return detail::PatternEvaluator(query, graph).run();
}

inline ResultSet execute(const GraphPattern& query, const KnowledgeGraph& graph) {
  ResultSet rs;
  for (TermId id : execute_ids(query, graph)) rs.bindings.push_back(graph.term(id));
  return rs;
}

}  // namespace siteqa
