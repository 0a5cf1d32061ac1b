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
#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "siteqa/corpus.hpp"
#include "siteqa/error.hpp"
#include "siteqa/reader.hpp"
#include "siteqa/url.hpp"

namespace siteqa {

// Request body sent to an external reading model:
//   {"question": "...", "paragraphs": [{"para_id": "...", "text": "..."}, ...]}
inline nlohmann::json remote_read_request(std::string_view question,
                                          std::span<const ScoredParagraph> retrieved,
                                          const Corpus& corpus) {
  nlohmann::json paras = nlohmann::json::array();
  for (const auto& r : retrieved) {
    const Paragraph* p = corpus.find_paragraph(r.para_id);
    if (!p) throw ValidationError("retrieved paragraph not in corpus: " + r.para_id);
    paras.push_back({{"para_id", p->para_id}, {"text", p->text}});
  }
  return {{"question", question}, {"paragraphs", paras}};
}

// Validates a {"spans": [{para_id, start_char, end_char, score}]} response
// against the paragraphs that were sent and shapes it like read(). Span
// scores are taken as the model's confidence; no retrieval fusion is applied.
inline TextAnswer parse_remote_response(const nlohmann::json& body,
                                        std::span<const ScoredParagraph> retrieved,
                                        const Corpus& corpus, const ReaderOptions& opts) {
  if (!body.is_object() || !body.contains("spans") || !body["spans"].is_array())
    throw ProtocolError("reader response lacks a 'spans' array");
  std::unordered_map<std::string, std::size_t> order;
  for (std::size_t i = 0; i < retrieved.size(); ++i) order.emplace(retrieved[i].para_id, i);

  struct Entry {
    ScoredSpan span;
    std::size_t para_order;
  };
  std::vector<Entry> entries;
  std::size_t idx = 0;
  for (const auto& js : body["spans"]) {
    const std::string where = "span #" + std::to_string(idx++);
    if (!js.is_object()) throw ProtocolError(where + " is not an object");
    auto para_it = js.find("para_id");
    auto start_it = js.find("start_char");
    auto end_it = js.find("end_char");
    auto score_it = js.find("score");
    if (para_it == js.end() || !para_it->is_string() || start_it == js.end() ||
        !start_it->is_number_integer() || end_it == js.end() || !end_it->is_number_integer() ||
        score_it == js.end() || !score_it->is_number())
      throw ProtocolError(where + " is missing para_id/start_char/end_char/score");
    const auto para_id = para_it->get<std::string>();
    const std::string name = where + " (" + para_id + ")";
    auto ord = order.find(para_id);
    if (ord == order.end()) throw ProtocolError(name + " refers to a paragraph that was not sent");
    const Paragraph* p = corpus.find_paragraph(para_id);
    const auto start = start_it->get<long long>();
    const auto end = end_it->get<long long>();
    const double score = score_it->get<double>();
    if (start < 0 || end <= start || static_cast<std::size_t>(end) > p->text.size())
      throw ProtocolError(name + " has offsets [" + std::to_string(start) + ", " + std::to_string(end) +
                          ") outside a paragraph of length " + std::to_string(p->text.size()));
    if (!(score >= 0.0 && score <= 1.0)) throw ProtocolError(name + " has a score outside [0, 1]");
    ScoredSpan s{para_id, static_cast<std::size_t>(start), static_cast<std::size_t>(end),
                 p->text.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(end - start)),
                 score};
    entries.push_back({std::move(s), ord->second});
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.span.span_score != b.span.span_score) return a.span.span_score > b.span.span_score;
    if (a.para_order != b.para_order) return a.para_order < b.para_order;
    return a.span.start_char < b.span.start_char;
  });
  std::vector<ScoredSpan> ranked;
  for (auto& e : entries) ranked.push_back(std::move(e.span));
  return detail::finalize_answer(std::move(ranked), opts);
}

// Client for a reading model hosted behind HTTP. Throws ReaderUnavailable on
// connection failure, timeout or a non-200 status, ProtocolError on a
// response that breaks the span contract.
inline TextAnswer remote_read(std::string_view question, std::span<const ScoredParagraph> retrieved,
                              const Corpus& corpus, const std::string& endpoint,
                              std::chrono::milliseconds timeout, const ReaderOptions& opts = {}) {
  if (retrieved.empty()) return {};
  if (!is_absolute_url(endpoint)) throw ReaderUnavailable("invalid endpoint '" + endpoint + "'");
  const auto request = remote_read_request(question, retrieved, corpus);
  const auto url = split_url(endpoint);
  httplib::Client client(url.scheme_host_port);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  auto res = client.Post(url.path, request.dump(), "application/json");
  if (!res) throw ReaderUnavailable(httplib::to_string(res.error()));
  if (res->status != 200) throw ReaderUnavailable("HTTP status " + std::to_string(res->status));
  nlohmann::json body;
  try {
    body = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProtocolError(std::string("reader response is not JSON: ") + e.what());
  }
  return parse_remote_response(body, retrieved, corpus, opts);
}

}  // namespace siteqa
