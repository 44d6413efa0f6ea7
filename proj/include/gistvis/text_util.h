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

#ifndef GISTVIS_TEXT_UTIL_H_
#define GISTVIS_TEXT_UTIL_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gistvis {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view trim(std::string_view s);
std::string to_lower_ascii(std::string_view s);

// Collapses whitespace runs to one space and trims both ends.
std::string normalize_whitespace(std::string_view s);

// Normalized whitespace text plus, for every output byte, the offset of the
// input byte it came from. Collapsed runs map to their first whitespace byte.
struct NormalizedText {
  std::string text;
  std::vector<std::size_t> source_offset;
};
NormalizedText normalize_with_offsets(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool contains_digit(std::string_view s);

// First case-insensitive (ASCII) occurrence of `needle` in `haystack` at or
// after `from` that starts and ends on word boundaries.
std::optional<std::size_t> find_word_ci(std::string_view haystack, std::string_view needle,
                                        std::size_t from = 0);

// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

// Minimal escaping for XML/HTML text and attribute values.
std::string xml_escape(std::string_view s);

// Renders a double without trailing zeros and without thousands separators.
// Values within 1e-9 of an integer print as integers; others are rounded to
// 12 significant digits first so arithmetic noise does not leak into text.
std::string format_number(double v);

}  // namespace gistvis

#endif  // GISTVIS_TEXT_UTIL_H_
