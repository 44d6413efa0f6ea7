// Copyright 2026 The GistVis Authors.
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

#include "gistvis/sentence.h"

#include <algorithm>
#include <array>

#include "gistvis/text_util.h"

namespace gistvis {

namespace {

constexpr std::array<std::string_view, 36> kAbbreviations = {
    "mr",  "mrs", "ms",   "dr",   "prof", "sr",   "jr",   "st",  "mt",  "vs",  "etc", "e.g",
    "i.e", "inc", "ltd",  "co",   "corp", "jan",  "feb",  "mar", "apr", "jun", "jul", "aug",
    "sep", "sept", "oct", "nov",  "dec",  "u.s",  "u.k",  "no",  "fig", "approx", "gov", "est",
};

bool is_upper(unsigned char c) { return c >= 'A' && c <= 'Z'; }

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

// Length of a closing quote/bracket at `i`, 0 if none.
std::size_t closer_len(std::string_view s, std::size_t i) {
  if (i >= s.size()) return 0;
  const char c = s[i];
  if (c == '"' || c == '\'' || c == ')' || c == ']') return 1;
  // U+201D and U+2019
  if (s.substr(i, 3) == "\xE2\x80\x9D" || s.substr(i, 3) == "\xE2\x80\x99") return 3;
  return 0;
}

// True if a sentence may start at `k`.
bool starts_sentence(std::string_view s, std::size_t k) {
  if (k >= s.size()) return false;
  if (is_upper(static_cast<unsigned char>(s[k]))) return true;
  std::size_t open = 0;
  if (s[k] == '"' || s[k] == '\'' || s[k] == '(' || s[k] == '[') open = 1;
  else if (s.substr(k, 3) == "\xE2\x80\x9C" || s.substr(k, 3) == "\xE2\x80\x98") open = 3;
  return open > 0 && k + open < s.size() && is_upper(static_cast<unsigned char>(s[k + open]));
}

// Token ending right before the period at `dot`, lowercased, without the dot.
std::string word_before(std::string_view s, std::size_t dot) {
  std::size_t b = dot;
  while (b > 0 && !is_space(s[b - 1]) && s[b - 1] != '(' && s[b - 1] != '"') --b;
  return to_lower_ascii(s.substr(b, dot - b));
}

}  // namespace

bool is_abbreviation(std::string_view word) {
  const std::string w = to_lower_ascii(word);
  if (w.size() == 1 && std::isalpha(static_cast<unsigned char>(w[0]))) return true;
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), w) != kAbbreviations.end();
}

std::vector<SegmentSpan> spans_from_cuts(std::string_view paragraph,
                                         const std::vector<std::size_t>& cuts) {
  std::vector<SegmentSpan> spans;
  std::size_t from = 0;
  auto emit = [&](std::size_t a, std::size_t b) {
    while (a < b && is_space(paragraph[a])) ++a;
    while (b > a && is_space(paragraph[b - 1])) --b;
    if (a < b) spans.push_back({a, b, std::string(paragraph.substr(a, b - a))});
  };
  for (std::size_t cut : cuts) {
    if (cut <= from || cut >= paragraph.size()) continue;
    emit(from, cut);
    from = cut;
  }
  emit(from, paragraph.size());
  return spans;
}

std::vector<SegmentSpan> split_sentences(std::string_view s) {
  std::vector<std::size_t> cuts;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!is_terminator(s[i])) continue;
    std::size_t j = i;
    while (j < s.size() && is_terminator(s[j])) ++j;
    while (std::size_t n = closer_len(s, j)) j += n;
    if (j >= s.size() || !is_space(s[j])) {
      i = j > i ? j - 1 : i;
      continue;
    }
    std::size_t k = j;
    while (k < s.size() && is_space(s[k])) ++k;
    const bool single_period = s[i] == '.' && (i + 1 == s.size() || s[i + 1] != '.');
    if (starts_sentence(s, k) && !(single_period && is_abbreviation(word_before(s, i))))
      cuts.push_back(j);
    i = j - 1;
  }
  return spans_from_cuts(s, cuts);
}

std::vector<std::size_t> sentence_end_offsets(std::string_view paragraph) {
  std::vector<std::size_t> ends;
  for (const auto& span : split_sentences(paragraph)) ends.push_back(span.end);
  return ends;
}

}  // namespace gistvis
