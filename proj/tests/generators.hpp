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

// Random inputs shared by the property tests and the acceptance binary.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "siteqa/kgstore.hpp"

namespace siteqa::gen {

inline const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> words = {
      "red",    "river",  "north",  "castle",  "stone",  "bridge", "capital", "green",
      "valley", "tower",  "lake",   "king",    "market", "old",    "new",     "member",
      "author", "city",   "series", "located", "border", "winner", "played",  "founded"};
  return words;
}

inline const std::vector<std::string>& filler_words() {
  static const std::vector<std::string> words = {"what", "is",   "the",   "of",  "which", "in",
                                                 "who",  "were", "about", "a",   "show",  "me"};
  return words;
}

template <class Rng>
std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

template <class Rng>
const std::string& pick(Rng& rng, const std::vector<std::string>& from) {
  return from[uniform(rng, 0, from.size() - 1)];
}

template <class Rng>
std::string random_label(Rng& rng) {
  std::string out;
  for (std::size_t i = 0, n = uniform(rng, 1, 3); i < n; ++i) out += (i ? " " : "") + pick(rng, vocabulary());
  return out;
}

template <class Rng>
std::string random_question(Rng& rng, const std::vector<std::string>& labels) {
  std::string q;
  for (std::size_t i = 0, n = uniform(rng, 1, 5); i < n; ++i) {
    if (!q.empty()) q += ' ';
    switch (rng() % 5) {
      case 0: q += pick(rng, filler_words()); break;
      case 1: q += pick(rng, vocabulary()); break;
      default: q += labels.empty() ? pick(rng, vocabulary()) : pick(rng, labels); break;
    }
    if (rng() % 5 == 0) q += "s";
  }
  return q + (rng() % 2 ? "?" : "");
}

struct KgInstance {
  std::vector<Triple> triples;
  std::vector<std::string> labels;  // every label literal used
  std::string question;
};

inline constexpr const char* kLabel = "http://www.w3.org/2000/01/rdf-schema#label";

// A small random graph whose labels share one vocabulary, so collisions,
// nested labels and overlapping spans all come up, plus a question mixing
// labels and filler words.
template <class Rng>
KgInstance random_kg_instance(Rng& rng) {
  KgInstance inst;
  const std::size_t n_nodes = uniform(rng, 3, 9);
  const std::size_t n_rels = uniform(rng, 1, 4);
  auto node = [](std::size_t i) { return Term::iri("http://r.example/n" + std::to_string(i)); };
  auto rel = [](std::size_t i) { return Term::iri("http://r.example/r" + std::to_string(i)); };
  auto add_labels = [&](const Term& t) {
    for (std::size_t i = 0, n = uniform(rng, 1, 2); i < n; ++i) {
      auto label = random_label(rng);
      inst.labels.push_back(label);
      inst.triples.push_back({t, Term::iri(kLabel), Term::literal(label, rng() % 2 ? "en" : "")});
    }
  };
  for (std::size_t i = 0; i < n_nodes; ++i) add_labels(node(i));
  for (std::size_t i = 0; i < n_rels; ++i) add_labels(rel(i));
  for (std::size_t i = 0, n = uniform(rng, n_nodes, 3 * n_nodes); i < n; ++i) {
    const Term s = node(uniform(rng, 0, n_nodes - 1));
    const Term p = rel(uniform(rng, 0, n_rels - 1));
    if (rng() % 6 == 0)
      inst.triples.push_back({s, p, Term::literal(std::to_string(uniform(rng, 1, 3)))});
    else
      inst.triples.push_back({s, p, node(uniform(rng, 0, n_nodes - 1))});
  }
  inst.question = random_question(rng, inst.labels);
  return inst;
}

}  // namespace siteqa::gen
