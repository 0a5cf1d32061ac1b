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
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "siteqa/error.hpp"
#include "siteqa/url.hpp"

namespace siteqa {

struct Document {
  std::string doc_id;
  std::string title;
  std::string body;
  std::string source_url;

  friend bool operator==(const Document&, const Document&) = default;
};

// Retrieval unit. `text` is the verbatim slice body[char_offset, char_offset + text.size()).
struct Paragraph {
  std::string para_id;
  std::string doc_id;
  std::size_t ordinal = 0;
  std::string text;
  std::size_t char_offset = 0;
  // Title of the parent document; indexed ahead of the paragraph text.
  std::string title;

  friend bool operator==(const Paragraph&, const Paragraph&) = default;
};

inline std::string make_para_id(std::string_view doc_id, std::size_t ordinal) {
  return std::string(doc_id) + "#" + std::to_string(ordinal);
}

// Documents in insertion order, unique by doc_id.
class DocumentStore {
 public:
  void add(Document doc) {
    if (doc.doc_id.empty()) throw ValidationError("document id must not be empty");
    if (!is_absolute_url(doc.source_url))
      throw ValidationError("document " + doc.doc_id + ": url is not absolute: " +
                            doc.source_url);
    if (index_.contains(doc.doc_id)) throw ValidationError("duplicate document id: " + doc.doc_id);
    index_.emplace(doc.doc_id, docs_.size());
    docs_.push_back(std::move(doc));
  }

  const Document* find(std::string_view doc_id) const {
    auto it = index_.find(std::string(doc_id));
    return it == index_.end() ? nullptr : &docs_[it->second];
  }

  const std::vector<Document>& documents() const { return docs_; }
  std::size_t size() const { return docs_.size(); }
  bool empty() const { return docs_.empty(); }

  friend bool operator==(const DocumentStore& a, const DocumentStore& b) {
    return a.docs_ == b.docs_;
  }

 private:
  std::vector<Document> docs_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Reads a JSON-lines corpus: one object per line with string keys id, title,
// body and url. Unknown keys are ignored and blank lines skipped.
inline DocumentStore ingest_documents(std::istream& in) {
  DocumentStore store;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no, e.byte);
    }
    if (!record.is_object()) throw ParseError("record is not a JSON object", line_no);
    auto field = [&](const char* key) -> std::string {
      auto it = record.find(key);
      if (it == record.end()) throw ParseError(std::string("missing field '") + key + "'", line_no);
      if (!it->is_string()) throw ParseError(std::string("field '") + key + "' is not a string", line_no);
      return it->get<std::string>();
    };
    Document doc{field("id"), field("title"), field("body"), field("url")};
    try {
      store.add(std::move(doc));
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return store;
}

struct SplitOptions {
  std::size_t min_chars = 50;
  std::size_t max_chars = 1500;
};

namespace detail {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

struct Range {
  std::size_t begin;
  std::size_t end;
};

// Blank-line delimited blocks, trimmed to their first and last non-space byte.
inline std::vector<Range> body_blocks(std::string_view body) {
  std::vector<Range> blocks;
  std::optional<Range> cur;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t eol = body.find('\n', pos);
    if (eol == std::string_view::npos) eol = body.size();
    std::string_view line = body.substr(pos, eol - pos);
    std::size_t first = 0;
    while (first < line.size() && is_space(line[first])) ++first;
    if (first == line.size()) {
      if (cur) blocks.push_back(*cur);
      cur.reset();
    } else {
      std::size_t last = line.size();
      while (is_space(line[last - 1])) --last;
      if (!cur) cur = Range{pos + first, pos + last};
      cur->end = pos + last;
    }
    pos = eol + 1;
  }
  if (cur) blocks.push_back(*cur);
  return blocks;
}

// Position just past the last ".", "?" or "!" that is followed by whitespace
// and lies within (begin, limit]; npos when there is none.
inline std::size_t last_sentence_cut(std::string_view body, std::size_t begin, std::size_t limit) {
  for (std::size_t p = limit; p > begin; --p) {
    char c = body[p - 1];
    if ((c == '.' || c == '?' || c == '!') && p < body.size() && is_space(body[p])) return p;
  }
  return std::string_view::npos;
}

}  // namespace detail

// Splits a document body into paragraphs. Blocks shorter than min_chars are
// merged with the blocks that follow them (the merged text keeps the original
// separators, so it is still a verbatim slice of the body); ranges longer
// than max_chars are cut at the last sentence end that fits, or hard-cut at
// max_chars when no sentence end exists.
inline std::vector<Paragraph> split_paragraphs(const Document& doc, const SplitOptions& opts = {}) {
  if (opts.min_chars == 0 || opts.min_chars >= opts.max_chars)
    throw ValidationError("split_paragraphs requires 0 < min_chars < max_chars");
  const std::string_view body = doc.body;

  std::vector<detail::Range> merged;
  std::optional<detail::Range> pending;
  for (const auto& block : detail::body_blocks(body)) {
    if (!pending) pending = block;
    pending->end = block.end;
    if (pending->end - pending->begin >= opts.min_chars) {
      merged.push_back(*pending);
      pending.reset();
    }
  }
  if (pending) merged.push_back(*pending);

  std::vector<Paragraph> out;
  auto emit = [&](std::size_t begin, std::size_t end) {
    while (end > begin && detail::is_space(body[end - 1])) --end;
    if (end == begin) return;
    Paragraph p;
    p.ordinal = out.size();
    p.doc_id = doc.doc_id;
    p.para_id = make_para_id(doc.doc_id, p.ordinal);
    p.text = std::string(body.substr(begin, end - begin));
    p.char_offset = begin;
    p.title = doc.title;
    out.push_back(std::move(p));
  };

  for (auto [begin, end] : merged) {
    while (end - begin > opts.max_chars) {
      std::size_t limit = begin + opts.max_chars;
      std::size_t cut = detail::last_sentence_cut(body, begin, limit);
      if (cut == std::string_view::npos) {
        cut = limit;
        // Never cut inside a UTF-8 sequence.
        while (cut > begin + 1 && (static_cast<unsigned char>(body[cut]) & 0xC0) == 0x80) --cut;
      }
      emit(begin, cut);
      begin = cut;
      while (begin < end && detail::is_space(body[begin])) ++begin;
    }
    if (begin < end) emit(begin, end);
  }
  return out;
}

// Documents plus their paragraphs, with lookups used at query time.
class Corpus {
 public:
  Corpus() = default;

  Corpus(DocumentStore store, const SplitOptions& opts) : store_(std::move(store)) {
    for (const auto& doc : store_.documents())
      for (auto& p : split_paragraphs(doc, opts)) paragraphs_.push_back(std::move(p));
    reindex();
  }

  Corpus(DocumentStore store, std::vector<Paragraph> paragraphs)
      : store_(std::move(store)), paragraphs_(std::move(paragraphs)) {
    reindex();
  }

  const DocumentStore& store() const { return store_; }
  const std::vector<Paragraph>& paragraphs() const { return paragraphs_; }

  const Paragraph* find_paragraph(std::string_view para_id) const {
    auto it = para_index_.find(std::string(para_id));
    return it == para_index_.end() ? nullptr : &paragraphs_[it->second];
  }

  const Document* document_by_url(std::string_view url) const {
    auto it = url_index_.find(std::string(url));
    return it == url_index_.end() ? nullptr : &store_.documents()[it->second];
  }

  // First paragraph of a document, if it has any.
  const Paragraph* first_paragraph(std::string_view doc_id) const {
    return find_paragraph(make_para_id(doc_id, 0));
  }

  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.store_ == b.store_ && a.paragraphs_ == b.paragraphs_;
  }

 private:
  void reindex() {
    para_index_.clear();
    url_index_.clear();
    for (std::size_t i = 0; i < paragraphs_.size(); ++i) {
      if (!para_index_.emplace(paragraphs_[i].para_id, i).second)
        throw ValidationError("duplicate paragraph id: " + paragraphs_[i].para_id);
    }
    const auto& docs = store_.documents();
    for (std::size_t i = 0; i < docs.size(); ++i) url_index_.emplace(docs[i].source_url, i);
  }

  DocumentStore store_;
  std::vector<Paragraph> paragraphs_;
  std::unordered_map<std::string, std::size_t> para_index_;
  std::unordered_map<std::string, std::size_t> url_index_;
};

inline constexpr int kCorpusFormatVersion = 1;

inline nlohmann::json corpus_to_json(const Corpus& corpus) {
  nlohmann::json docs = nlohmann::json::array();
  for (const auto& d : corpus.store().documents())
    docs.push_back({{"id", d.doc_id}, {"title", d.title}, {"body", d.body}, {"url", d.source_url}});
  nlohmann::json paras = nlohmann::json::array();
  for (const auto& p : corpus.paragraphs())
    paras.push_back({{"doc_id", p.doc_id}, {"ordinal", p.ordinal}, {"char_offset", p.char_offset},
                     {"length", p.text.size()}});
  return {{"format", "siteqa-corpus"}, {"version", kCorpusFormatVersion}, {"documents", docs},
          {"paragraphs", paras}};
}

// Paragraph texts are stored as offsets into their document body and
// re-sliced on load.
inline Corpus corpus_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "siteqa-corpus" || j.value("version", 0) != kCorpusFormatVersion)
    throw ValidationError("unsupported corpus file format");
  DocumentStore store;
  for (const auto& d : j.at("documents"))
    store.add({d.at("id").get<std::string>(), d.at("title").get<std::string>(),
               d.at("body").get<std::string>(), d.at("url").get<std::string>()});
  std::vector<Paragraph> paras;
  for (const auto& pj : j.at("paragraphs")) {
    Paragraph p;
    p.doc_id = pj.at("doc_id").get<std::string>();
    p.ordinal = pj.at("ordinal").get<std::size_t>();
    p.char_offset = pj.at("char_offset").get<std::size_t>();
    const Document* doc = store.find(p.doc_id);
    auto len = pj.at("length").get<std::size_t>();
    if (!doc || p.char_offset + len > doc->body.size())
      throw ValidationError("corpus file: paragraph outside its document");
    p.para_id = make_para_id(p.doc_id, p.ordinal);
    p.text = doc->body.substr(p.char_offset, len);
    p.title = doc->title;
    paras.push_back(std::move(p));
  }
  return Corpus(std::move(store), std::move(paras));
}

}  // namespace siteqa
