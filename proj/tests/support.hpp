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

// Fixture locations and loaders shared by the unit and acceptance tests.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "siteqa/siteqa.hpp"

namespace siteqa::testing {

inline std::filesystem::path fixtures_dir() { return SITEQA_FIXTURES_DIR; }
inline std::filesystem::path test_data_dir() { return SITEQA_TEST_DATA_DIR; }

inline Config fixture_config() {
  return Config::from_json(read_json_file((fixtures_dir() / "config.json").string()));
}

inline std::vector<Triple> fixture_triples() {
  std::ifstream in(fixtures_dir() / "graph.nt");
  return parse_ntriples(in);
}

inline const KnowledgeGraph& fixture_graph() {
  static const KnowledgeGraph g = [] {
    auto cfg = fixture_config();
    auto triples = fixture_triples();
    return build_graph(triples, cfg.label_predicates, cfg.enrichment);
  }();
  return g;
}

inline const TextData& fixture_text() {
  static const TextData data = build_text_data((fixtures_dir() / "corpus.jsonl").string(), fixture_config());
  return data;
}

inline const Dataset& fixture_dataset() {
  static const Dataset ds = load_dataset(fixtures_dir());
  return ds;
}

inline std::string ex(const std::string& local) { return "http://kg.example.org/entity/" + local; }
inline std::string prop(const std::string& local) { return "http://kg.example.org/prop/" + local; }

// A fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("siteqa_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace siteqa::testing
