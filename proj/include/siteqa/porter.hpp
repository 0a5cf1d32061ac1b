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

#include <string>
#include <string_view>

namespace siteqa {

// Porter's 1980 suffix-stripping algorithm, original rule set (no later
// extensions such as logi -> log). Input must be lowercase ASCII letters;
// words of one or two letters are returned unchanged.
class PorterStemmer {
 public:
  std::string operator()(std::string_view word) const {
    Buffer buf{std::string(word)};
    if (buf.b.size() <= 2) return buf.b;
    buf.k = static_cast<int>(buf.b.size()) - 1;
    buf.step1ab();
    if (buf.k > 0) {
      buf.step1c();
      buf.step2();
      buf.step3();
      buf.step4();
      buf.step5();
    }
    return buf.b.substr(0, static_cast<std::size_t>(buf.k) + 1);
  }

 private:
  // b[0..k] is the word being stemmed; j marks the end of the stem once a
  // suffix has been matched by ends().
  struct Buffer {
    std::string b;
    int k = 0;
    int j = 0;

    bool cons(int i) const {
      switch (b[i]) {
        case 'a': case 'e': case 'i': case 'o': case 'u':
          return false;
        case 'y':
          return i == 0 ? true : !cons(i - 1);
        default:
          return true;
      }
    }

    // Number of VC sequences in b[0..j].
    int m() const {
      int n = 0;
      int i = 0;
      while (true) {
        if (i > j) return n;
        if (!cons(i)) break;
        i++;
      }
      i++;
      while (true) {
        while (true) {
          if (i > j) return n;
          if (cons(i)) break;
          i++;
        }
        i++;
        n++;
        while (true) {
          if (i > j) return n;
          if (!cons(i)) break;
          i++;
        }
        i++;
      }
    }

    bool vowel_in_stem() const {
      for (int i = 0; i <= j; i++)
        if (!cons(i)) return true;
      return false;
    }

    bool double_cons(int i) const {
      if (i < 1) return false;
      if (b[i] != b[i - 1]) return false;
      return cons(i);
    }

    // consonant-vowel-consonant ending at i, last consonant not w, x or y.
    bool cvc(int i) const {
      if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
      char ch = b[i];
      return ch != 'w' && ch != 'x' && ch != 'y';
    }

    bool ends(std::string_view s) {
      int len = static_cast<int>(s.size());
      if (len > k + 1) return false;
      if (std::string_view(b).substr(k - len + 1, len) != s) return false;
      j = k - len;
      return true;
    }

    void set_to(std::string_view s) {
      b.replace(j + 1, k - j, s);
      k = j + static_cast<int>(s.size());
      b.resize(k + 1);
    }

    void replace_if_measure(std::string_view s) {
      if (m() > 0) set_to(s);
    }

    void step1ab() {
      if (b[k] == 's') {
        if (ends("sses")) {
          k -= 2;
        } else if (ends("ies")) {
          set_to("i");
        } else if (b[k - 1] != 's') {
          k--;
        }
      }
      b.resize(k + 1);
      if (ends("eed")) {
        if (m() > 0) k--;
      } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
        k = j;
        b.resize(k + 1);
        if (ends("at")) {
          set_to("ate");
        } else if (ends("bl")) {
          set_to("ble");
        } else if (ends("iz")) {
          set_to("ize");
        } else if (double_cons(k)) {
          k--;
          char ch = b[k];
          if (ch == 'l' || ch == 's' || ch == 'z') k++;
        } else if (j = k, m() == 1 && cvc(k)) {
          set_to("e");
        }
      }
      b.resize(k + 1);
    }

    void step1c() {
      if (ends("y") && vowel_in_stem()) b[k] = 'i';
    }

    bool try_rule(std::string_view suffix, std::string_view repl, bool& matched) {
      if (!ends(suffix)) return false;
      replace_if_measure(repl);
      matched = true;
      return true;
    }

    void step2() {
      if (k < 1) return;
      bool done = false;
      switch (b[k - 1]) {
        case 'a':
          try_rule("ational", "ate", done) || try_rule("tional", "tion", done);
          break;
        case 'c':
          try_rule("enci", "ence", done) || try_rule("anci", "ance", done);
          break;
        case 'e':
          try_rule("izer", "ize", done);
          break;
        case 'l':
          try_rule("abli", "able", done) || try_rule("alli", "al", done) ||
              try_rule("entli", "ent", done) || try_rule("eli", "e", done) ||
              try_rule("ousli", "ous", done);
          break;
        case 'o':
          try_rule("ization", "ize", done) || try_rule("ation", "ate", done) ||
              try_rule("ator", "ate", done);
          break;
        case 's':
          try_rule("alism", "al", done) || try_rule("iveness", "ive", done) ||
              try_rule("fulness", "ful", done) || try_rule("ousness", "ous", done);
          break;
        case 't':
          try_rule("aliti", "al", done) || try_rule("iviti", "ive", done) ||
              try_rule("biliti", "ble", done);
          break;
        default:
          break;
      }
      b.resize(k + 1);
    }

    void step3() {
      bool done = false;
      switch (b[k]) {
        case 'e':
          try_rule("icate", "ic", done) || try_rule("ative", "", done) ||
              try_rule("alize", "al", done);
          break;
        case 'i':
          try_rule("iciti", "ic", done);
          break;
        case 'l':
          try_rule("ical", "ic", done) || try_rule("ful", "", done);
          break;
        case 's':
          try_rule("ness", "", done);
          break;
        default:
          break;
      }
      b.resize(k + 1);
    }

    void step4() {
      if (k < 1) return;
      bool found = false;
      switch (b[k - 1]) {
        case 'a':
          found = ends("al");
          break;
        case 'c':
          found = ends("ance") || ends("ence");
          break;
        case 'e':
          found = ends("er");
          break;
        case 'i':
          found = ends("ic");
          break;
        case 'l':
          found = ends("able") || ends("ible");
          break;
        case 'n':
          found = ends("ant") || ends("ement") || ends("ment") || ends("ent");
          break;
        case 'o':
          if (ends("ion") && j >= 0 && (b[j] == 's' || b[j] == 't')) {
            found = true;
          } else {
            found = ends("ou");
          }
          break;
        case 's':
          found = ends("ism");
          break;
        case 't':
          found = ends("ate") || ends("iti");
          break;
        case 'u':
          found = ends("ous");
          break;
        case 'v':
          found = ends("ive");
          break;
        case 'z':
          found = ends("ize");
          break;
        default:
          break;
      }
      if (found && m() > 1) k = j;
      b.resize(k + 1);
    }

    void step5() {
      j = k;
      if (b[k] == 'e') {
        int a = m();
        if (a > 1 || (a == 1 && !cvc(k - 1))) k--;
      }
      j = k;
      if (b[k] == 'l' && double_cons(k) && m() > 1) k--;
      b.resize(k + 1);
    }
  };
};

// Convenience wrapper around a default PorterStemmer.
inline std::string porter_stem(std::string_view word) {
  return PorterStemmer{}(word);
}

}  // namespace siteqa
