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

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "siteqa/kgstore.hpp"
#include "siteqa/tokenizer.hpp"
#include "support.hpp"

namespace siteqa {
namespace {

using testing::ex;
using testing::prop;

std::vector<Triple> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_ntriples(in);
}

PatternSlot v(const char* name) { return Variable{name}; }
PatternSlot e(const std::string& local) { return Term::iri(ex(local)); }
PatternSlot p(const std::string& local) { return Term::iri(prop(local)); }

TEST(NTriplesTest, IriTriple) {
  auto ts = parse("<http://ex/Italy> <http://ex/capital> <http://ex/Rome> .\n");
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_TRUE(ts[0].object.is_iri());
  EXPECT_EQ(ts[0].object.value, "http://ex/Rome");
}

TEST(NTriplesTest, LiteralForms) {
  auto ts = parse(
      "# comment\n"
      "\n"
      "<http://ex/Rome> <http://ex/label> \"Rome\"@EN .\n"
      "<http://ex/Rome> <http://ex/pop> \"2748109\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n"
      "<http://ex/Rome> <http://ex/note> \"tab\\there \\\"quoted\\\" \\\\ caf\\u00E9 \\U0001F600\\n\" .  # trailing\n"
      "_:b1 <http://ex/p> _:b2 .\n");
  ASSERT_EQ(ts.size(), 4u);
  EXPECT_EQ(ts[0].object.lang, "en");
  EXPECT_EQ(ts[1].object.datatype, "http://www.w3.org/2001/XMLSchema#integer");
  EXPECT_EQ(ts[2].object.value, "tab\there \"quoted\" \\ caf\xc3\xa9 \xf0\x9f\x98\x80\n");
  EXPECT_EQ(ts[3].subject.kind, Term::Kind::Blank);
}

TEST(NTriplesTest, ErrorsCarryLineAndColumn) {
  try {
    parse("<http://ex/a> <http://ex/b> <http://ex/c> .\n<http://ex/a> <http://ex/b> <http://ex/c>\n");
    FAIL();
  } catch (const ParseError& err) {
    EXPECT_EQ(err.line(), 2u);
    EXPECT_GT(err.column(), 0u);
  }
  EXPECT_THROW(parse("<a> <http://ex/b> <http://ex/c> .\n"), ParseError);
  EXPECT_THROW(parse("<http://ex/a> \"lit\" <http://ex/c> .\n"), ParseError);
  EXPECT_THROW(parse("<http://ex/a> <http://ex/b> \"open .\n"), ParseError);
  EXPECT_THROW(parse("<http://ex/a> <http://ex/b> \"x\"@ .\n"), ParseError);
  EXPECT_THROW(parse("<http://ex/a> <http://ex/b> \"\\q\" .\n"), ParseError);
}

TEST(NTriplesTest, SerializationRoundTrips) {
  auto triples = testing::fixture_triples();
  triples.push_back({Term::iri("http://ex/s"), Term::iri("http://ex/p"),
                     Term::literal("line\nbreak \"q\" \\ tab\t\xc3\xa9", "fr-ca")});
  triples.push_back({Term::blank("n0"), Term::iri("http://ex/p"), Term::literal("7", "", "http://ex/int")});
  std::ostringstream out;
  write_ntriples(out, triples);
  EXPECT_EQ(parse(out.str()), triples);
}

TEST(GraphTest, FixtureLabelIndex) {
  const auto& g = testing::fixture_graph();
  auto entries = g.lookup_label("capit");
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_EQ(g.term(entries[0].element).value, prop("capital"));
  EXPECT_EQ(entries[0].kind, ElementKind::Relation);
  EXPECT_EQ(entries[0].label, "capital");
  auto italy = g.lookup_label("itali");
  ASSERT_EQ(italy.size(), 1u);
  EXPECT_EQ(italy[0].kind, ElementKind::Node);
}

// Every label triple is reachable through its stemmed phrase.
TEST(GraphTest, LabelIndexComplete) {
  const auto& g = testing::fixture_graph();
  std::size_t checked = 0;
  for (const auto& t : testing::fixture_triples()) {
    if (t.predicate.value != default_label_predicates()[0] && t.predicate.value != default_label_predicates()[1])
      continue;
    auto toks = tokenize(t.object.value);
    bool found = false;
    for (const auto& entry : g.lookup_label(stem_phrase(toks)))
      found = found || (g.term(entry.element) == t.subject && entry.label == t.object.value);
    EXPECT_TRUE(found) << t.object.value;
    ++checked;
  }
  EXPECT_GT(checked, 100u);
}

TEST(GraphTest, EmptyAndKindRules) {
  auto empty = build_graph({}, default_label_predicates());
  EXPECT_EQ(empty.num_triples(), 0u);
  EXPECT_TRUE(empty.labels().empty());

  auto ts = parse(
      "<http://ex/knows> <http://www.w3.org/2000/01/rdf-schema#label> \"knows\" .\n"
      "<http://ex/knows> <http://ex/knows> <http://ex/bob> .\n"
      "<http://ex/bob> <http://www.w3.org/2000/01/rdf-schema#label> \"Bob\"@en .\n"
      "<http://ex/bob> <http://www.w3.org/2000/01/rdf-schema#label> \"Bob\"@en .\n");
  auto g = build_graph(ts, default_label_predicates());
  EXPECT_EQ(g.num_triples(), 3u);
  auto knows = g.lookup_label("know");
  ASSERT_EQ(knows.size(), 1u);
  EXPECT_EQ(knows[0].kind, ElementKind::Relation);
  EXPECT_EQ(g.lookup_label("bob").size(), 1u);
  EXPECT_EQ(g.display_label(*g.find_iri("http://ex/bob")), "Bob");
}

TEST(GraphTest, OnlyConfiguredLabelPredicates) {
  auto ts = parse("<http://ex/a> <http://ex/name> \"Alpha\" .\n");
  EXPECT_TRUE(build_graph(ts, default_label_predicates()).labels().empty());
  std::vector<std::string> preds{"http://ex/name"};
  EXPECT_EQ(build_graph(ts, preds).lookup_label("alpha").size(), 1u);
}

TEST(GraphTest, AdjacencyBothDirections) {
  const auto& g = testing::fixture_graph();
  auto italy = *g.find_iri(ex("Italy"));
  auto rome = *g.find_iri(ex("Rome"));
  auto capital = *g.find_iri(prop("capital"));
  bool out = false, in = false;
  for (const auto& edge : g.out_edges(italy)) out = out || (edge.predicate == capital && edge.neighbor == rome);
  for (const auto& edge : g.in_edges(rome)) in = in || (edge.predicate == capital && edge.neighbor == italy);
  EXPECT_TRUE(out);
  EXPECT_TRUE(in);
}

TEST(ExecuteTest, FixtureExamples) {
  const auto& g = testing::fixture_graph();
  auto rs = execute({{{e("Italy"), p("capital"), v("x")}}, "x"}, g);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs.bindings[0].value, ex("Rome"));

  auto star = execute({{{v("x"), p("instanceOf"), e("ScientificConferenceSeries")},
                        {v("x"), p("mainSubject"), e("WorldWideWeb")}},
                       "x"},
                      g);
  ASSERT_EQ(star.size(), 1u);
  EXPECT_EQ(star.bindings[0].value, ex("TheWebConference"));

  EXPECT_TRUE(execute({{{e("Rome"), p("capital"), v("x")}}, "x"}, g).empty());
}

TEST(ExecuteTest, DistinctAndOrdered) {
  const auto& g = testing::fixture_graph();
  auto rs = execute({{{v("x"), p("instanceOf"), v("c")}}, "c"}, g);
  for (std::size_t i = 1; i < rs.size(); ++i) EXPECT_LT(to_ntriples(rs.bindings[i - 1]), to_ntriples(rs.bindings[i]));
}

// Random patterns over the fixture graph against the nested-loop join.
TEST(ExecuteTest, RandomPatternsMatchJoinOracle) {
  const auto triples = testing::fixture_triples();
  const auto& g = testing::fixture_graph();
  std::mt19937 rng(5);
  auto pick = [&]() -> const Triple& { return triples[rng() % triples.size()]; };
  for (int iter = 0; iter < 150; ++iter) {
    const Triple& a = pick();
    const Triple& b = pick();
    GraphPattern q;
    q.projection = "v1";
    switch (rng() % 6) {
      case 0: q.patterns = {{a.subject, a.predicate, v("v1")}}; break;
      case 1: q.patterns = {{v("v1"), a.predicate, a.object}}; break;
      case 2: q.patterns = {{a.subject, a.predicate, v("v1")}, {v("v1"), b.predicate, b.object}}; break;
      case 3: q.patterns = {{v("v1"), a.predicate, a.object}, {v("v1"), b.predicate, b.object}}; break;
      case 4: q.patterns = {{a.subject, a.predicate, v("v2")}, {v("v2"), b.predicate, v("v1")}}; break;
      default: q.patterns = {{a.subject, v("v2"), v("v1")}, {v("v1"), v("v3"), b.object}}; break;
    }
    auto got = execute(q, g);
    EXPECT_EQ(got.bindings, oracle::join(triples, q));
  }
}

TEST(GraphPersistenceTest, JsonRoundTrip) {
  const auto& g = testing::fixture_graph();
  auto back = graph_from_json(graph_to_json(g));
  EXPECT_TRUE(back == g);
  EXPECT_EQ(graph_to_json(back).dump(), graph_to_json(g).dump());
  EXPECT_THROW(graph_from_json({{"format", "siteqa-graph"}, {"version", 2}}), ValidationError);
}

TEST(EnrichmentPropsTest, RolesArePureConfiguration) {
  auto props = EnrichmentProps::from_json({{"image", "http://www.wikidata.org/prop/direct/P18"}});
  EXPECT_EQ(props.predicate("image"), "http://www.wikidata.org/prop/direct/P18");
  EXPECT_FALSE(props.predicate("homepage"));
  EXPECT_THROW(EnrichmentProps::from_json({{"logo", "http://ex/x"}}), ValidationError);
}

}  // namespace
}  // namespace siteqa
