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

#include "gistvis/number_parser.h"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "gistvis/text_util.h"

namespace gistvis {

namespace {

struct Word {
  std::string_view text;
  double value;
};

constexpr std::array<Word, 28> kCardinals = {{
    {"zero", 0},      {"one", 1},        {"two", 2},       {"three", 3},    {"four", 4},
    {"five", 5},      {"six", 6},        {"seven", 7},     {"eight", 8},    {"nine", 9},
    {"ten", 10},      {"eleven", 11},    {"twelve", 12},   {"thirteen", 13}, {"fourteen", 14},
    {"fifteen", 15},  {"sixteen", 16},   {"seventeen", 17}, {"eighteen", 18}, {"nineteen", 19},
    {"twenty", 20},   {"thirty", 30},    {"forty", 40},    {"fifty", 50},   {"sixty", 60},
    {"seventy", 70},  {"eighty", 80},    {"ninety", 90},
}};

constexpr std::array<Word, 28> kOrdinals = {{
    {"zeroth", 0},      {"first", 1},       {"second", 2},      {"third", 3},
    {"fourth", 4},      {"fifth", 5},       {"sixth", 6},       {"seventh", 7},
    {"eighth", 8},      {"ninth", 9},       {"tenth", 10},      {"eleventh", 11},
    {"twelfth", 12},    {"thirteenth", 13}, {"fourteenth", 14}, {"fifteenth", 15},
    {"sixteenth", 16},  {"seventeenth", 17}, {"eighteenth", 18}, {"nineteenth", 19},
    {"twentieth", 20},  {"thirtieth", 30},  {"fortieth", 40},   {"fiftieth", 50},
    {"sixtieth", 60},   {"seventieth", 70}, {"eightieth", 80},  {"ninetieth", 90},
}};

constexpr std::array<Word, 4> kScales = {{
    {"thousand", 1e3}, {"million", 1e6}, {"billion", 1e9}, {"trillion", 1e12},
}};

constexpr std::array<Word, 5> kSuffixScales = {{
    {"k", 1e3}, {"mn", 1e6}, {"bn", 1e9}, {"tn", 1e12}, {"m", 1e6},
}};

constexpr std::array<std::string_view, 18> kHedges = {
    "around", "about",  "almost", "approximately", "nearly", "roughly", "over",   "under",
    "some",   "just",   "only",   "more than",     "less than", "up to", "at least", "at most",
    "approx.", "~",
};

template <std::size_t N>
std::optional<double> lookup(const std::array<Word, N>& table, std::string_view w) {
  for (const auto& e : table)
    if (e.text == w) return e.value;
  return std::nullopt;
}

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(std::move(cur));
    cur.clear();
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    const bool hyphen_between_letters = c == '-' && i > 0 && i + 1 < s.size() &&
                                        std::isalpha(static_cast<unsigned char>(s[i - 1])) &&
                                        std::isalpha(static_cast<unsigned char>(s[i + 1]));
    const bool comma_after_word = c == ',' && i > 0 && std::isalpha(static_cast<unsigned char>(s[i - 1]));
    if (is_space(c) || hyphen_between_letters || comma_after_word) {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return tokens;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Digit literal with optional grouped thousands, fraction and exponent.
std::optional<double> parse_literal(std::string_view tok) {
  std::string_view mantissa = tok;
  std::string_view exponent;
  if (auto e = tok.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = tok.substr(0, e);
    exponent = tok.substr(e + 1);
    if (!exponent.empty() && (exponent[0] == '+' || exponent[0] == '-')) exponent.remove_prefix(1);
    if (!all_digits(exponent)) return std::nullopt;
  }
  std::string_view int_part = mantissa;
  std::string_view frac_part;
  bool has_point = false;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
    has_point = true;
    if (!frac_part.empty() && !all_digits(frac_part)) return std::nullopt;
  }
  if (int_part.empty() && frac_part.empty()) return std::nullopt;
  if (int_part.find(',') != std::string_view::npos) {
    // 1-3 leading digits, then groups of exactly three.
    std::size_t first = int_part.find(',');
    if (first == 0 || first > 3 || !all_digits(int_part.substr(0, first))) return std::nullopt;
    std::size_t pos = first;
    while (pos < int_part.size()) {
      if (int_part[pos] != ',' || pos + 4 > int_part.size() ||
          !all_digits(int_part.substr(pos + 1, 3)))
        return std::nullopt;
      pos += 4;
    }
  } else if (!int_part.empty() && !all_digits(int_part)) {
    return std::nullopt;
  }
  if (has_point && int_part.empty() && frac_part.empty()) return std::nullopt;

  std::string clean;
  for (char c : tok)
    if (c != ',') clean.push_back(c);
  char* end = nullptr;
  const double v = std::strtod(clean.c_str(), &end);
  if (end != clean.c_str() + clean.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

bool is_number_word(std::string_view w) {
  return lookup(kCardinals, w) || lookup(kOrdinals, w) || lookup(kScales, w) || w == "hundred" ||
         w == "hundredth" || w == "thousandth" || w == "millionth" || w == "point";
}

bool is_alpha_word(std::string_view w) {
  if (w.empty()) return false;
  for (char c : w) {
    const auto u = static_cast<unsigned char>(c);
    if (!std::isalpha(u) && c != '.' && c != '\'' && c != '/' && c != '-' && u < 0x80) return false;
  }
  return true;
}

// Cursor over tokens; each parse step consumes what it understands.
struct Cursor {
  const std::vector<std::string>& toks;
  std::size_t i = 0;
  bool done() const { return i >= toks.size(); }
  const std::string& peek() const { return toks[i]; }
};

// Consumes trailing scale words ("1.2 million", "3 hundred thousand") and
// returns the total power of ten they contribute.
int take_scale_exponent(Cursor& cur) {
  int exp10 = 0;
  while (!cur.done()) {
    if (cur.peek() == "hundred") {
      exp10 += 2;
    } else if (auto s = lookup(kScales, cur.peek())) {
      exp10 += static_cast<int>(std::lround(std::log10(*s)));
    } else {
      break;
    }
    ++cur.i;
  }
  return exp10;
}

// Shifting the decimal exponent keeps "4.35 million" exactly 4350000.
std::optional<double> scale_literal(const std::string& literal, int exp10) {
  std::string clean;
  for (char c : literal)
    if (c != ',') clean.push_back(c);
  if (exp10 == 0) return parse_literal(literal);
  if (clean.find_first_of("eE") != std::string::npos) {
    auto base = parse_literal(literal);
    if (!base) return std::nullopt;
    return *base * std::pow(10.0, exp10);
  }
  clean += "e" + std::to_string(exp10);
  char* end = nullptr;
  const double v = std::strtod(clean.c_str(), &end);
  if (end != clean.c_str() + clean.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

// English cardinal/ordinal words: "two hundred and five thousand",
// "forty-two", "twenty first", "two point five".
std::optional<double> parse_words(Cursor& cur) {
  double total = 0;
  double current = 0;
  double last_scale = std::numeric_limits<double>::infinity();
  bool any = false;
  bool ended_by_ordinal = false;

  if (!cur.done() && (cur.peek() == "a" || cur.peek() == "an") && cur.i + 1 < cur.toks.size() &&
      (cur.toks[cur.i + 1] == "hundred" || lookup(kScales, cur.toks[cur.i + 1]))) {
    current = 1;
    ++cur.i;
  }

  while (!cur.done() && !ended_by_ordinal) {
    const std::string& w = cur.peek();
    if (auto v = lookup(kCardinals, w)) {
      current += *v;
      any = true;
    } else if (auto o = lookup(kOrdinals, w)) {
      current += *o;
      any = true;
      ended_by_ordinal = true;
    } else if (w == "hundred" || w == "hundredth") {
      current = (current == 0 ? 1 : current) * 100;
      any = true;
      ended_by_ordinal = w == "hundredth";
    } else if (auto s = lookup(kScales, w)) {
      if (*s >= last_scale) return std::nullopt;
      total += (current == 0 ? 1 : current) * *s;
      current = 0;
      last_scale = *s;
      any = true;
    } else if (w == "thousandth" || w == "millionth") {
      total += (current == 0 ? 1 : current) * (w == "thousandth" ? 1e3 : 1e6);
      current = 0;
      any = true;
      ended_by_ordinal = true;
    } else if (w == "and" && any && cur.i + 1 < cur.toks.size() &&
               is_number_word(cur.toks[cur.i + 1])) {
      // connector
    } else if (w == "point" && any) {
      ++cur.i;
      double scale = 0.1;
      double frac = 0;
      bool digits = false;
      while (!cur.done()) {
        auto d = lookup(kCardinals, cur.peek());
        if (!d || *d > 9) break;
        frac += *d * scale;
        scale /= 10;
        digits = true;
        ++cur.i;
      }
      if (!digits) return std::nullopt;
      current += frac;
      break;
    } else {
      break;
    }
    ++cur.i;
  }
  if (!any) return std::nullopt;
  return total + current;
}

std::string strip_hedges(std::string s) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::string_view h : kHedges) {
      if (s.size() > h.size() && s.compare(0, h.size(), h) == 0 &&
          (h == "~" || is_space(s[h.size()]))) {
        s = std::string(trim(std::string_view(s).substr(h.size())));
        changed = true;
      }
    }
  }
  return s;
}

bool strip_suffix(std::string& s, std::string_view suffix) {
  if (s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
    s = std::string(trim(std::string_view(s).substr(0, s.size() - suffix.size())));
    return true;
  }
  return false;
}

}  // namespace

std::optional<ParsedQuantity> parse_quantity(std::string_view expr) {
  std::string s = to_lower_ascii(trim(expr));
  while (!s.empty() && (s.back() == '.' || s.back() == ',' || s.back() == ';' ||
                        s.back() == ':' || s.back() == '!' || s.back() == '?'))
    s.pop_back();
  s = strip_hedges(std::string(trim(s)));
  if (s.empty()) return std::nullopt;

  double sign = 1;
  if (s.rfind("minus ", 0) == 0 || s.rfind("negative ", 0) == 0) {
    sign = -1;
    s = std::string(trim(std::string_view(s).substr(s.find(' '))));
  } else if (s[0] == '-' || s[0] == '+') {
    sign = s[0] == '-' ? -1 : 1;
    s.erase(0, 1);
  } else if (s.rfind("\xE2\x88\x92", 0) == 0) {  // U+2212 minus sign
    sign = -1;
    s.erase(0, 3);
  }
  for (std::string_view cur : {"$", "\xE2\x82\xAC", "\xC2\xA3", "\xC2\xA5"}) {
    if (s.rfind(cur, 0) == 0) {
      s.erase(0, cur.size());
      break;
    }
  }
  s = std::string(trim(s));

  ParsedQuantity out;
  std::optional<double> fraction;
  out.percent = strip_suffix(s, "%") || strip_suffix(s, "percent") ||
                strip_suffix(s, "per cent") || strip_suffix(s, "pct");
  if (s.empty()) return std::nullopt;

  const std::vector<std::string> toks = tokenize(s);
  Cursor cur{toks};
  std::optional<double> value;

  std::string first = toks.front();
  // A literal may carry an attached suffix: "2nd", "5k", "40%".
  if (!first.empty() && (std::isdigit(static_cast<unsigned char>(first[0])) || first[0] == '.')) {
    int suffix_exp = 0;
    bool percent_attached = false;
    if (first.back() == '%') {
      first.pop_back();
      percent_attached = true;
    }
    for (std::string_view ord : {"st", "nd", "rd", "th"}) {
      if (first.size() > ord.size() && first.compare(first.size() - ord.size(), ord.size(), ord) == 0 &&
          all_digits(std::string_view(first).substr(0, first.size() - ord.size()))) {
        first.resize(first.size() - ord.size());
        break;
      }
    }
    for (const auto& sc : kSuffixScales) {
      if (first.size() > sc.text.size() &&
          first.compare(first.size() - sc.text.size(), sc.text.size(), sc.text) == 0 &&
          parse_literal(std::string_view(first).substr(0, first.size() - sc.text.size()))) {
        first.resize(first.size() - sc.text.size());
        suffix_exp = static_cast<int>(std::lround(std::log10(sc.value)));
        break;
      }
    }
    if (!parse_literal(first)) return std::nullopt;
    cur.i = 1;
    const int exp10 = suffix_exp + take_scale_exponent(cur);
    value = scale_literal(first, exp10);
    if (!value) return std::nullopt;
    if (percent_attached) {
      if (out.percent) return std::nullopt;
      out.percent = true;
    }
    if (out.percent) fraction = scale_literal(first, exp10 - 2);
  } else {
    value = parse_words(cur);
    if (!value) return std::nullopt;
  }

  // Anything left must be unit words such as "meters" or "of carbon".
  for (; !cur.done(); ++cur.i) {
    const std::string& t = cur.peek();
    if (is_number_word(t) || !is_alpha_word(t)) return std::nullopt;
  }
  out.magnitude = sign * *value;
  if (!std::isfinite(out.magnitude)) return std::nullopt;
  if (out.magnitude == 0) out.magnitude = 0;  // drop negative zero
  out.fraction = fraction ? sign * *fraction : out.magnitude / 100.0;
  if (out.fraction == 0) out.fraction = 0;
  return out;
}

double parse_number(std::string_view expr) {
  auto q = parse_quantity(expr);
  if (!q) return std::numeric_limits<double>::quiet_NaN();
  return q->percent ? q->fraction : q->magnitude;
}

}  // namespace gistvis
