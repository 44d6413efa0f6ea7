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

#include "gistvis/text_util.h"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace gistvis {

namespace {

bool is_word_char(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

}  // namespace

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = lower(c);
  return out;
}

std::string normalize_whitespace(std::string_view s) { return normalize_with_offsets(s).text; }

NormalizedText normalize_with_offsets(std::string_view s) {
  NormalizedText out;
  out.text.reserve(s.size());
  out.source_offset.reserve(s.size());
  bool pending_space = false;
  std::size_t space_at = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (is_space(s[i])) {
      if (!pending_space) space_at = i;
      pending_space = true;
      continue;
    }
    if (pending_space && !out.text.empty()) {
      out.text.push_back(' ');
      out.source_offset.push_back(space_at);
    }
    pending_space = false;
    out.text.push_back(s[i]);
    out.source_offset.push_back(i);
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

bool contains_digit(std::string_view s) {
  for (char c : s)
    if (c >= '0' && c <= '9') return true;
  return false;
}

std::optional<std::size_t> find_word_ci(std::string_view haystack, std::string_view needle,
                                        std::size_t from) {
  if (needle.empty() || needle.size() > haystack.size()) return std::nullopt;
  const std::string hay = to_lower_ascii(haystack);
  const std::string ndl = to_lower_ascii(needle);
  const bool word_start = is_word_char(static_cast<unsigned char>(ndl.front()));
  const bool word_end = is_word_char(static_cast<unsigned char>(ndl.back()));
  for (std::size_t pos = hay.find(ndl, from); pos != std::string::npos;
       pos = hay.find(ndl, pos + 1)) {
    const std::size_t end = pos + ndl.size();
    const bool left_ok =
        !word_start || pos == 0 || !is_word_char(static_cast<unsigned char>(hay[pos - 1]));
    const bool right_ok =
        !word_end || end == hay.size() || !is_word_char(static_cast<unsigned char>(hay[end]));
    if (left_ok && right_ok) return pos;
  }
  return std::nullopt;
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  const double rounded = std::round(v);
  if (std::fabs(v - rounded) <= 1e-9 * std::max(1.0, std::fabs(v)) && std::fabs(rounded) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", rounded == 0.0 ? 0.0 : rounded);
    return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double tidy = std::strtod(buf, nullptr);
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, tidy, std::chars_format::fixed);
  if (ec != std::errc()) return std::string(buf);
  return std::string(buf, end);
}

}  // namespace gistvis
