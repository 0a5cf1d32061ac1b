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
#include <string>
#include <string_view>

namespace siteqa {

// scheme "://" authority [path...], no whitespace anywhere.
inline bool is_absolute_url(std::string_view url) {
  auto colon = url.find("://");
  if (colon == std::string_view::npos || colon == 0) return false;
  auto is_alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  if (!is_alpha(url[0])) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    char c = url[i];
    if (!(is_alpha(c) || (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.'))
      return false;
  }
  std::string_view rest = url.substr(colon + 3);
  if (rest.empty() || rest[0] == '/' || rest[0] == '?' || rest[0] == '#') return false;
  for (char c : url)
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') return false;
  return true;
}

// Percent-encodes everything except ASCII letters, digits and ". _ ~".
// '-' , '&' and ',' are encoded so the result is safe inside a text fragment
// directive.
inline std::string percent_encode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(s.size() * 3);
  for (unsigned char c : s) {
    bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                c == '.' || c == '_' || c == '~';
    if (keep) {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    }
  }
  return out;
}

// URL that scrolls to and highlights `passage` in supporting browsers.
inline std::string text_fragment_link(std::string_view url, std::string_view passage) {
  std::string base(url.substr(0, url.find('#')));
  return base + "#:~:text=" + percent_encode(passage);
}

struct UrlParts {
  std::string scheme_host_port;  // e.g. "http://localhost:8080"
  std::string path;              // starts with '/', defaults to "/"
};

inline UrlParts split_url(std::string_view url) {
  auto authority = url.find("://");
  std::size_t host_start = authority == std::string_view::npos ? 0 : authority + 3;
  auto slash = url.find('/', host_start);
  if (slash == std::string_view::npos) return {std::string(url), "/"};
  return {std::string(url.substr(0, slash)), std::string(url.substr(slash))};
}

}  // namespace siteqa
