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

// Rule-based English sentence splitter: a terminator (.!?) followed by
// whitespace and an uppercase letter ends a sentence, unless the token before
// a period is a known abbreviation or a single-letter initial.

#ifndef GISTVIS_SENTENCE_H_
#define GISTVIS_SENTENCE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gistvis {

// Half-open byte range [start, end) of a paragraph plus its verbatim text.
struct SegmentSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string text;

  bool operator==(const SegmentSpan&) const = default;
};

// Sentences with surrounding whitespace trimmed. Empty or all-whitespace
// input yields no spans; input without a terminator yields one span.
std::vector<SegmentSpan> split_sentences(std::string_view paragraph);

// Offsets where a sentence may end: the end of every sentence span.
std::vector<std::size_t> sentence_end_offsets(std::string_view paragraph);

bool is_abbreviation(std::string_view word);

// Builds trimmed spans from a sorted list of cut points in (0, size).
std::vector<SegmentSpan> spans_from_cuts(std::string_view paragraph,
                                         const std::vector<std::size_t>& cuts);

}  // namespace gistvis

#endif  // GISTVIS_SENTENCE_H_
