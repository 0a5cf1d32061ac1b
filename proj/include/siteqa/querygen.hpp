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
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "siteqa/kgstore.hpp"
#include "siteqa/linker.hpp"

namespace siteqa {

// Query shapes, with n a linked node, r a relation and ?x the projection:
//   OutEdge:   (n, r, ?x)
//   InEdge:    (?x, r, n)
//   Path:      (n1, r1, ?x) . (?x, r2, n2)
//   Star:      (?x, r1, n1) . (?x, r2, n2)
//   TwoHopOut: (n, r1, ?v2) . (?v2, r2, ?x)
enum class QueryTemplate : std::uint8_t { OutEdge = 1, InEdge, Path, Star, TwoHopOut };

inline constexpr const char* kProjection = "v1";
inline constexpr const char* kHiddenVariable = "v2";

struct CandidateQuery {
  QueryTemplate shape = QueryTemplate::OutEdge;
  GraphPattern pattern;
  // Linked spans the query was built from, ordered by position.
  std::vector<LinkedSpan> provenance;
  std::size_t relation_slots = 0;
  std::size_t linked_relation_slots = 0;
  std::string serialization;
  // Projection bindings of `pattern`, ascending; never empty.
  std::vector<TermId> answers;

  std::size_t pattern_count() const { return pattern.patterns.size(); }
};

inline std::string serialize_slot(const PatternSlot& slot) {
  if (const auto* v = std::get_if<Variable>(&slot)) return "?" + v->name;
  return to_ntriples(std::get<Term>(slot));
}

// `SELECT ?v1 WHERE { <s> <p> <o> . ... }` with patterns in ascending text
// order. Generated patterns only use ?v1 (projection) and ?v2, so the
// variable numbering is already canonical.
inline std::string canonical_serialization(const GraphPattern& q) {
  std::vector<std::string> parts;
  for (const auto& tp : q.patterns)
    parts.push_back(serialize_slot(tp.subject) + " " + serialize_slot(tp.predicate) + " " +
                    serialize_slot(tp.object));
  std::sort(parts.begin(), parts.end());
  std::string out = "SELECT ?" + q.projection + " WHERE { ";
  for (const auto& p : parts) out += p + " . ";
  out += "}";
  return out;
}

struct QueryGenOptions {
  std::size_t max_patterns = 2;
  std::size_t max_candidates = 512;
};

// Relations that lie on a path of length one or two between the elements of
// two non-overlapping linked node spans.
inline std::set<TermId> path_relations(std::span<const LinkedSpan> spans, const KnowledgeGraph& graph) {
  std::vector<const LinkedSpan*> nodes;
  for (const auto& s : spans)
    if (s.kind == ElementKind::Node) nodes.push_back(&s);

  // element -> neighbor -> relations on the connecting edges
  std::unordered_map<TermId, std::map<TermId, std::set<TermId>>> hop;
  for (const auto* s : nodes) {
    if (hop.contains(s->element)) continue;
    auto& m = hop[s->element];
    for (const auto& e : graph.out_edges(s->element)) m[e.neighbor].insert(e.predicate);
    for (const auto& e : graph.in_edges(s->element)) m[e.neighbor].insert(e.predicate);
  }
  std::set<TermId> found;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const auto* a = nodes[i];
      const auto* b = nodes[j];
      if (a->overlaps(*b) || a->element == b->element) continue;
      const auto& ha = hop.at(a->element);
      const auto& hb = hop.at(b->element);
      if (auto direct = ha.find(b->element); direct != ha.end())
        found.insert(direct->second.begin(), direct->second.end());
      for (const auto& [mid, rels] : ha) {
        if (mid == a->element || mid == b->element) continue;
        auto other = hb.find(mid);
        if (other == hb.end()) continue;
        found.insert(rels.begin(), rels.end());
        found.insert(other->second.begin(), other->second.end());
      }
    }
  }
  return found;
}

namespace detail {

struct RelationFiller {
  TermId relation;
  const LinkedSpan* span;  // nullptr: relation discovered on a path
};

// Preference among instantiations that serialize identically: more linked
// spans, then more covered question tokens, then earliest spans.
inline bool better_provenance(const std::vector<LinkedSpan>& a, const std::vector<LinkedSpan>& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  auto covered = [](const std::vector<LinkedSpan>& v) {
    std::set<std::size_t> toks;
    for (const auto& s : v)
      for (std::size_t t = s.start_tok; t < s.end_tok; ++t) toks.insert(t);
    return toks.size();
  };
  auto ca = covered(a);
  auto cb = covered(b);
  if (ca != cb) return ca > cb;
  auto key = [](const std::vector<LinkedSpan>& v) {
    std::vector<std::tuple<std::size_t, std::size_t, std::string>> k;
    for (const auto& s : v) k.emplace_back(s.start_tok, s.end_tok, s.iri);
    return k;
  };
  return key(a) < key(b);
}

// Provenance first; among equal provenance, more relation slots taken from
// linked spans.
inline bool better_candidate(const CandidateQuery& a, const CandidateQuery& b) {
  if (better_provenance(a.provenance, b.provenance)) return true;
  if (better_provenance(b.provenance, a.provenance)) return false;
  return a.linked_relation_slots > b.linked_relation_slots;
}

class Generator {
 public:
  Generator(std::span<const LinkedSpan> spans, const KnowledgeGraph& graph, const QueryGenOptions& opts)
      : spans_(spans), graph_(graph), opts_(opts) {
    for (const auto& s : spans_) {
      if (s.kind == ElementKind::Node) nodes_.push_back(&s);
      else relation_spans_.push_back(&s);
    }
    discovered_ = path_relations(spans_, graph_);
    for (const auto* r : relation_spans_) allowed_.insert(r->element);
    allowed_.insert(discovered_.begin(), discovered_.end());
    for (std::size_t i = 0; i < nodes_.size(); ++i) node_index_[nodes_[i]->element].push_back(i);
  }

  std::vector<CandidateQuery> run() {
    if (nodes_.empty()) return {};
    propose();
    std::vector<CandidateQuery> out;
    for (auto& key : order_) {
      if (out.size() >= opts_.max_candidates) break;
      auto& c = best_.at(key);
      c.answers = execute_ids(c.pattern, graph_);
      if (!c.answers.empty()) out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const CandidateQuery& a, const CandidateQuery& b) {
      return a.serialization < b.serialization;
    });
    return out;
  }

 private:
  bool allowed(TermId r) const { return allowed_.contains(r); }

  // Ways to fill a relation slot with `r` given the spans already used.
  std::vector<RelationFiller> fillers(TermId r, const std::vector<const LinkedSpan*>& used) const {
    std::vector<RelationFiller> out;
    for (const auto* s : relation_spans_) {
      if (s->element != r) continue;
      bool clash = std::any_of(used.begin(), used.end(), [&](const LinkedSpan* u) { return u->overlaps(*s); });
      if (!clash) out.push_back({r, s});
    }
    if (discovered_.contains(r)) out.push_back({r, nullptr});
    return out;
  }

  Term iri(TermId id) const { return graph_.term(id); }

  void consider(QueryTemplate shape, std::vector<TriplePattern> patterns,
                const std::vector<const LinkedSpan*>& nodes, const std::vector<RelationFiller>& rels) {
    CandidateQuery c;
    c.shape = shape;
    c.pattern.patterns = std::move(patterns);
    c.pattern.projection = kProjection;
    c.serialization = canonical_serialization(c.pattern);
    c.relation_slots = rels.size();
    std::vector<const LinkedSpan*> prov(nodes.begin(), nodes.end());
    for (const auto& f : rels) {
      if (!f.span) continue;
      ++c.linked_relation_slots;
      if (std::find(prov.begin(), prov.end(), f.span) == prov.end()) prov.push_back(f.span);
    }
    std::sort(prov.begin(), prov.end(), [](const LinkedSpan* a, const LinkedSpan* b) {
      return std::tie(a->start_tok, a->end_tok, a->iri) < std::tie(b->start_tok, b->end_tok, b->iri);
    });
    for (const auto* s : prov) c.provenance.push_back(*s);

    auto it = best_.find(c.serialization);
    if (it == best_.end()) {
      order_.push_back(c.serialization);
      best_.emplace(c.serialization, std::move(c));
    } else if (better_candidate(c, it->second)) {
      it->second = std::move(c);
    }
  }

  static PatternSlot var(const char* name) { return Variable{name}; }

  // Single relation slot templates.
  void emit_single(QueryTemplate shape, const LinkedSpan* n, TermId r) {
    std::vector<const LinkedSpan*> used{n};
    for (const auto& f : fillers(r, used)) {
      TriplePattern tp = shape == QueryTemplate::OutEdge
                             ? TriplePattern{iri(n->element), iri(r), var(kProjection)}
                             : TriplePattern{var(kProjection), iri(r), iri(n->element)};
      consider(shape, {tp}, used, {f});
    }
  }

  void emit_double(QueryTemplate shape, std::vector<const LinkedSpan*> used, TermId r1, TermId r2,
                   const std::vector<TriplePattern>& patterns) {
    for (const auto& f1 : fillers(r1, used)) {
      auto used2 = used;
      if (f1.span) used2.push_back(f1.span);
      auto f2s = fillers(r2, used2);
      // The same relation span may fill both slots.
      if (f1.span && r1 == r2) f2s.push_back(f1);
      for (const auto& f2 : f2s) consider(shape, patterns, used, {f1, f2});
    }
  }

  void propose() {
    std::set<std::tuple<int, std::size_t, std::size_t, TermId, TermId>> seen;
    auto first_visit = [&](QueryTemplate t, std::size_t a, std::size_t b, TermId r1, TermId r2) {
      return seen.emplace(static_cast<int>(t), a, b, r1, r2).second;
    };
    for (std::size_t ni = 0; ni < nodes_.size(); ++ni) {
      const LinkedSpan* n = nodes_[ni];
      for (const auto& e : graph_.out_edges(n->element))
        if (allowed(e.predicate) && first_visit(QueryTemplate::OutEdge, ni, 0, e.predicate, 0))
          emit_single(QueryTemplate::OutEdge, n, e.predicate);
      for (const auto& e : graph_.in_edges(n->element))
        if (allowed(e.predicate) && first_visit(QueryTemplate::InEdge, ni, 0, e.predicate, 0))
          emit_single(QueryTemplate::InEdge, n, e.predicate);
    }
    if (opts_.max_patterns < 2) return;

    for (std::size_t ni = 0; ni < nodes_.size(); ++ni) {
      const LinkedSpan* n1 = nodes_[ni];
      const Term c1 = iri(n1->element);
      // Path: n1 -r1-> x -r2-> n2
      for (const auto& e1 : graph_.out_edges(n1->element)) {
        if (!allowed(e1.predicate)) continue;
        for (const auto& e2 : graph_.out_edges(e1.neighbor)) {
          if (!allowed(e2.predicate)) continue;
          for (std::size_t nj : second_nodes(e2.neighbor, ni)) {
            if (!first_visit(QueryTemplate::Path, ni, nj, e1.predicate, e2.predicate)) continue;
            emit_double(QueryTemplate::Path, {n1, nodes_[nj]}, e1.predicate, e2.predicate,
                        {{c1, iri(e1.predicate), var(kProjection)},
                         {var(kProjection), iri(e2.predicate), iri(e2.neighbor)}});
          }
        }
      }
      // Star: x -r1-> n1, x -r2-> n2
      for (const auto& e1 : graph_.in_edges(n1->element)) {
        if (!allowed(e1.predicate)) continue;
        for (const auto& e2 : graph_.out_edges(e1.neighbor)) {
          if (!allowed(e2.predicate)) continue;
          if (e2.predicate == e1.predicate && e2.neighbor == n1->element) continue;
          for (std::size_t nj : second_nodes(e2.neighbor, ni)) {
            if (!first_visit(QueryTemplate::Star, ni, nj, e1.predicate, e2.predicate)) continue;
            emit_double(QueryTemplate::Star, {n1, nodes_[nj]}, e1.predicate, e2.predicate,
                        {{var(kProjection), iri(e1.predicate), c1},
                         {var(kProjection), iri(e2.predicate), iri(e2.neighbor)}});
          }
        }
      }
      // TwoHopOut: n -r1-> v2 -r2-> x
      for (const auto& e1 : graph_.out_edges(n1->element)) {
        if (!allowed(e1.predicate)) continue;
        for (const auto& e2 : graph_.out_edges(e1.neighbor)) {
          if (!allowed(e2.predicate)) continue;
          if (!first_visit(QueryTemplate::TwoHopOut, ni, 0, e1.predicate, e2.predicate)) continue;
          emit_double(QueryTemplate::TwoHopOut, {n1}, e1.predicate, e2.predicate,
                      {{c1, iri(e1.predicate), var(kHiddenVariable)},
                       {var(kHiddenVariable), iri(e2.predicate), var(kProjection)}});
        }
      }
    }
  }

  // Node spans for `element` that may pair with node span `first`.
  std::vector<std::size_t> second_nodes(TermId element, std::size_t first) const {
    std::vector<std::size_t> out;
    auto it = node_index_.find(element);
    if (it == node_index_.end()) return out;
    for (std::size_t j : it->second)
      if (j != first && !nodes_[j]->overlaps(*nodes_[first])) out.push_back(j);
    return out;
  }

  std::span<const LinkedSpan> spans_;
  const KnowledgeGraph& graph_;
  QueryGenOptions opts_;
  std::vector<const LinkedSpan*> nodes_;
  std::vector<const LinkedSpan*> relation_spans_;
  std::set<TermId> discovered_;
  std::unordered_set<TermId> allowed_;
  std::unordered_map<TermId, std::vector<std::size_t>> node_index_;
  std::map<std::string, CandidateQuery> best_;
  std::vector<std::string> order_;
};

}  // namespace detail

// Builds every non-empty candidate query reachable within two hops of the
// linked nodes. Relation slots take linked relations or relations found on
// paths between linked nodes; overlapping spans never share a query.
// Output is ordered by canonical serialization.
inline std::vector<CandidateQuery> generate(std::span<const LinkedSpan> spans, const KnowledgeGraph& graph,
                                            const QueryGenOptions& opts = {}) {
  if (opts.max_patterns < 1 || opts.max_patterns > 2)
    throw ValidationError("max_patterns must be 1 or 2");
  return detail::Generator(spans, graph, opts).run();
}

}  // namespace siteqa
