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

// Command line front end: build indexes, ask questions, run the /qa server,
// evaluate a labelled question set and train ranking weights.
//
// Exit status: 0 success, 1 invalid input, 2 I/O failure.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"
#include "siteqa/siteqa.hpp"

namespace {

using siteqa::Config;
using siteqa::Dataset;

std::string default_data_dir() {
  if (const char* env = std::getenv("SITEQA_DATA")) return env;
  return "data";
}

std::optional<Config> load_config(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return Config::from_json(siteqa::read_json_file(path));
}

// Comma separated list, empty items dropped.
std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = siteqa::trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void print_bundle(const siteqa::AnswerBundle& b, std::ostream& out) {
  out << "branch: " << siteqa::to_string(b.branch) << "  confidence: " << std::fixed << std::setprecision(3)
      << b.confidence << "  presentation: " << siteqa::to_string(b.presentation) << "\n";
  if (b.kg_answer) {
    out << "query: " << b.kg_answer->interpretation << "\n";
    for (std::size_t i = 0; i < b.kg_answer->entities.size(); ++i) {
      const auto& label = b.kg_answer->labels[i];
      out << "  " << (label.empty() ? b.kg_answer->entities[i].value : label) << "  <"
          << b.kg_answer->entities[i].value << ">\n";
    }
  }
  if (b.text_answer) {
    out << "answer: " << b.text_answer->span.text << "\n";
    out << "source: " << b.text_answer->deep_link << "\n";
  }
  for (const auto& c : b.low_confidence) {
    out << "  maybe (" << siteqa::to_string(c.branch) << ", " << std::setprecision(3) << c.score << "): ";
    for (std::size_t i = 0; i < c.values.size() && i < 3; ++i) out << (i ? ", " : "") << c.values[i];
    if (c.values.size() > 3) out << ", ...";
    out << "\n";
  }
  for (const auto& d : b.diagnostics) out << "note: " << d << "\n";
}

int cmd_index_text(const std::string& input, const std::string& out_dir, const std::string& config_path) {
  Config cfg = load_config(config_path).value_or(Config{});
  auto data = siteqa::build_text_data(input, cfg);
  siteqa::save_text_data(data, out_dir);
  std::cout << "indexed " << data.corpus.store().size() << " documents, " << data.corpus.paragraphs().size()
            << " paragraphs into " << out_dir << "\n";
  return 0;
}

int cmd_index_kg(const std::string& input, const std::string& out_dir, const std::string& labels,
                 const std::string& config_path) {
  Config cfg = load_config(config_path).value_or(Config{});
  if (!labels.empty()) cfg.label_predicates = split_list(labels);
  auto graph = siteqa::build_graph_from_file(input, cfg);
  siteqa::save_graph(graph, out_dir);
  std::cout << "indexed " << graph.num_triples() << " triples, " << graph.labels().size() << " labels into "
            << out_dir << "\n";
  return 0;
}

int cmd_ask(const std::string& question, const std::string& data_dir, const std::string& kb,
            std::optional<std::size_t> k, bool json) {
  auto ds = siteqa::load_dataset(data_dir);
  auto bundle = siteqa::answer(question, ds, siteqa::parse_kb(kb), k);
  if (json) std::cout << siteqa::bundle_to_json(bundle).dump(2) << "\n";
  else print_bundle(bundle, std::cout);
  return 0;
}

httplib::Server* g_server = nullptr;

int cmd_serve(const std::string& data_dir, const std::string& host, int port) {
  auto ds = std::make_shared<const Dataset>(siteqa::load_dataset(data_dir));
  httplib::Server server;
  siteqa::install_routes(server, ds, ds->config.cors_origin);
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->stop();
  });
  std::cout << "serving /qa on http://" << host << ":" << port << std::endl;
  if (!server.listen(host, port)) throw siteqa::IoError("cannot listen on " + host + ":" + std::to_string(port));
  return 0;
}

// A labelled question is correct when the chosen branch matches and, if
// expected answers are given, one of them is found: an entity IRI or label
// for KG answers, a substring of the span for text answers.
bool answer_matches(const siteqa::AnswerBundle& b, const std::vector<std::string>& expected) {
  if (expected.empty()) return true;
  for (const auto& e : expected) {
    const auto want = siteqa::ascii_lower(e);
    if (b.kg_answer) {
      for (std::size_t i = 0; i < b.kg_answer->entities.size(); ++i)
        if (b.kg_answer->entities[i].value == e || siteqa::ascii_lower(b.kg_answer->labels[i]) == want) return true;
    }
    if (b.text_answer && siteqa::ascii_lower(b.text_answer->span.text).find(want) != std::string::npos) return true;
  }
  return false;
}

int cmd_eval(const std::string& qa_path, const std::string& data_dir) {
  auto ds = siteqa::load_dataset(data_dir);
  std::ifstream in(qa_path);
  if (!in) throw siteqa::IoError("cannot open " + qa_path);
  std::string line;
  std::size_t line_no = 0, total = 0, branch_ok = 0, answer_ok = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string question, branch;
    std::vector<std::string> expected;
    try {
      auto j = nlohmann::json::parse(line);
      question = j.at("question").get<std::string>();
      branch = j.at("branch").get<std::string>();
      expected = j.value("answers", std::vector<std::string>{});
    } catch (const nlohmann::json::exception& e) {
      throw siteqa::ParseError(std::string("invalid qa record: ") + e.what(), line_no);
    }
    auto b = siteqa::answer(question, ds);
    const bool bok = siteqa::to_string(b.branch) == branch;
    const bool aok = bok && answer_matches(b, expected);
    ++total;
    branch_ok += bok;
    answer_ok += aok;
    std::cout << (aok ? "ok   " : "FAIL ") << question << "  [" << siteqa::to_string(b.branch) << "]\n";
  }
  if (total == 0) throw siteqa::ValidationError(qa_path + ": no questions");
  std::cout << std::fixed << std::setprecision(3) << "branch accuracy " << double(branch_ok) / total
            << "  answer accuracy " << double(answer_ok) / total << "  (" << total << " questions)\n";
  return 0;
}

int cmd_train(const std::string& train_path, const std::string& data_dir, const std::string& out_path,
              std::size_t epochs, double rate) {
  auto ds = siteqa::load_dataset(data_dir);
  if (!ds.graph) throw siteqa::ValidationError("training needs a graph in " + data_dir);
  std::ifstream in(train_path);
  if (!in) throw siteqa::IoError("cannot open " + train_path);
  auto records = siteqa::read_training_file(in);
  siteqa::TrainingOptions opts{rate, epochs};
  auto report = siteqa::train_weights(records, *ds.graph, ds.config.weights, opts, ds.config.querygen);
  Config cfg = ds.config;
  cfg.weights = report.weights;
  siteqa::write_json_file(out_path, cfg.to_json());
  std::cout << "trained on " << records.size() - report.skipped << " questions (" << report.skipped
            << " skipped), " << report.updates << " updates; config written to " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"siteqa: question answering over a site corpus and a knowledge graph"};
  app.require_subcommand(1);

  std::string input, out_dir, config_path, labels;
  auto* index_text = app.add_subcommand("index-text", "Split and index a JSON-lines corpus");
  index_text->add_option("corpus", input, "corpus.jsonl with id, title, body, url")->required();
  index_text->add_option("--out", out_dir, "Output data directory")->required();
  index_text->add_option("--config", config_path, "Configuration file");

  auto* index_kg = app.add_subcommand("index-kg", "Load and index an N-Triples graph");
  index_kg->add_option("graph", input, "graph.nt")->required();
  index_kg->add_option("--out", out_dir, "Output data directory")->required();
  index_kg->add_option("--labels", labels, "Comma separated label predicate IRIs");
  index_kg->add_option("--config", config_path, "Configuration file");

  std::string data_dir = default_data_dir();
  std::string question, kb = "kg,text";
  std::optional<std::size_t> k;
  bool json = false;
  auto* ask = app.add_subcommand("ask", "Answer one question");
  ask->add_option("question", question)->required();
  ask->add_option("--data", data_dir, "Data directory (default $SITEQA_DATA or ./data)");
  ask->add_option("--kb", kb, "Branches to use: kg, text or both");
  ask->add_option("--k", k, "Paragraphs to retrieve")->check(CLI::PositiveNumber);
  ask->add_flag("--json", json, "Print the /qa JSON response");

  std::string host = "0.0.0.0";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Serve the /qa endpoint");
  serve->add_option("--data", data_dir, "Data directory");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));

  auto* eval = app.add_subcommand("eval", "Score a labelled question set");
  eval->add_option("qa", input, "JSON lines with question, branch, answers")->required();
  eval->add_option("--data", data_dir, "Data directory");

  std::string out_path;
  std::size_t epochs = 50;
  double rate = 0.1;
  auto* train = app.add_subcommand("train", "Learn ranking weights from gold queries");
  train->add_option("examples", input, "JSON lines with question, gold_query")->required();
  train->add_option("--data", data_dir, "Data directory");
  train->add_option("--out", out_path, "Configuration file to write")->required();
  train->add_option("--epochs", epochs, "Training epochs");
  train->add_option("--rate", rate, "Learning rate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*index_text) return cmd_index_text(input, out_dir, config_path);
    if (*index_kg) return cmd_index_kg(input, out_dir, labels, config_path);
    if (*ask) return cmd_ask(question, data_dir, kb, k, json);
    if (*serve) return cmd_serve(data_dir, host, port);
    if (*eval) return cmd_eval(input, data_dir);
    if (*train) return cmd_train(input, data_dir, out_path, epochs, rate);
  } catch (const siteqa::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const siteqa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
