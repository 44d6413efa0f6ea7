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


#include "support.h"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gistvis/text_util.h"

namespace gistvis::testing {

namespace {

const std::vector<std::string> kWords = {
    "sales", "rose", "market", "share", "Brand", "revenue", "the", "of", "in", "quarter",
    "prices", "fell", "city", "growth", "exports", "report", "données", "naïve", "\"quoted\"",
    "back\\slash", "tab\tword", "ünïcode", "café", "x<y", "a&b", "percent", "year"};

const std::vector<std::string> kAbbrevLeads = {"Dr.", "Mr.", "Mrs.", "Prof.", "St.", "U.S.",
                                               "e.g.", "approx.", "Inc.", "Jan."};

template <typename T>
const T& pick(std::mt19937& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

int uniform(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double real(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::string capitalized(std::string w) {
  if (!w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

std::string spacing(std::mt19937& rng) {
  switch (uniform(rng, 0, 9)) {
    case 0: return "  ";
    case 1: return "\n";
    case 2: return " \n ";
    default: return " ";
  }
}

}  // namespace

std::filesystem::path source_path(const std::string& relative) {
  return std::filesystem::path(GISTVIS_SOURCE_DIR) / relative;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GatewayOptions fast_options() {
  GatewayOptions o;
  o.sleep = [](std::chrono::milliseconds) {};
  return o;
}

std::string fence_table(const std::vector<std::vector<std::string>>& rows,
                        const std::string& trailer) {
  std::string out = "```\nspace | breakdown | kind | feature | value\n--- | --- | --- | --- | ---\n";
  for (const auto& r : rows) out += join(r, " | ") + "\n";
  out += "```";
  if (!trailer.empty()) out += "\n" + trailer;
  return out;
}

void script_checkers(ScriptedBackend& backend, const std::string& segment,
                     const std::set<InsightType>& yes) {
  for (InsightType t : kDataInsightTypes) {
    backend.add_rule("checker." + std::string(to_string(t)), segment,
                     {yes.count(t) ? "yes" : "no"});
  }
}

DataSpecEntry entry(std::string breakdown, double value, BreakdownKind kind, std::string space,
                    std::string feature) {
  return {std::move(space), std::move(breakdown), kind, std::move(feature), value};
}

std::string random_sentence(std::mt19937& rng, bool terminate) {
  std::string s;
  const int n = uniform(rng, 2, 9);
  if (uniform(rng, 0, 5) == 0) s = pick(rng, kAbbrevLeads) + " ";
  s += capitalized(pick(rng, kWords));
  for (int i = 1; i < n; ++i) {
    s += " ";
    switch (uniform(rng, 0, 7)) {
      case 0: s += std::to_string(uniform(rng, 1, 99999)); break;
      case 1: s += std::to_string(uniform(rng, 0, 99)) + "." + std::to_string(uniform(rng, 0, 9)); break;
      case 2: s += std::to_string(uniform(rng, 1, 99)) + "%"; break;
      case 3: s += "J. " + capitalized(pick(rng, kWords)); break;
      default: s += pick(rng, kWords);
    }
  }
  if (terminate) {
    const int t = uniform(rng, 0, 9);
    s += t == 0 ? "!" : t == 1 ? "?" : t == 2 ? ".\"" : ".";
  }
  return s;
}

std::string random_paragraph(std::mt19937& rng) {
  const int n = uniform(rng, 1, 6);
  std::string p;
  if (uniform(rng, 0, 4) == 0) p += "  ";
  for (int i = 0; i < n; ++i) {
    if (i) p += spacing(rng);
    p += random_sentence(rng, i + 1 < n || uniform(rng, 0, 4) != 0);
  }
  if (uniform(rng, 0, 4) == 0) p += "\n";
  return p;
}

DataFact random_fact(std::mt19937& rng, std::string context, bool allow_degraded) {
  DataFact f;
  f.unit_segment.context = std::move(context);
  const InsightType t = kAllInsightTypes[uniform(rng, 0, 6)];
  f.unit_segment.insight_type = t;
  if (t == InsightType::kNone) return f;
  if (allow_degraded && uniform(rng, 0, 9) == 0) {
    f.data_spec.emplace();
    f.flags.push_back("extraction_degraded:unparseable");
    return f;
  }
  auto label = [&](int i) { return pick(rng, kWords) + " " + std::to_string(i); };
  std::vector<DataSpecEntry> rows;
  switch (t) {
    case InsightType::kValue: {
      const int n = uniform(rng, 1, 3);
      for (int i = 0; i < n; ++i) rows.push_back(entry(label(i), real(rng, 0.5, 1e6)));
      if (uniform(rng, 0, 2) == 0) f.unit_segment.position = std::vector<std::string>{"the value"};
      break;
    }
    case InsightType::kTrend: {
      if (uniform(rng, 0, 2) == 0) {
        rows.push_back(entry(std::to_string(uniform(rng, 1990, 2030)), std::nan(""),
                             BreakdownKind::kTemporal));
        f.unit_segment.attribute =
            uniform(rng, 0, 1) ? SemanticAttribute::kIncreasing : SemanticAttribute::kDecreasing;
      } else {
        const int n = uniform(rng, 2, 7);
        for (int i = 0; i < n; ++i)
          rows.push_back(entry(std::to_string(2000 + i), real(rng, -50, 5000), BreakdownKind::kTemporal));
        if (uniform(rng, 0, 1))
          f.unit_segment.attribute = rows.back().value >= rows.front().value
                                         ? SemanticAttribute::kIncreasing
                                         : SemanticAttribute::kDecreasing;
      }
      break;
    }
    case InsightType::kComparison: {
      const int n = uniform(rng, 2, 5);
      for (int i = 0; i < n; ++i) rows.push_back(entry(label(i), real(rng, 1, 1e5)));
      break;
    }
    case InsightType::kProportion: {
      const int n = uniform(rng, 1, 4);
      double left = 1.0;
      for (int i = 0; i < n; ++i) {
        const double v = i + 1 == n ? left : real(rng, 0, left);
        rows.push_back(entry(label(i), v));
        left -= v;
      }
      break;
    }
    case InsightType::kExtreme: {
      const int n = uniform(rng, 1, 5);
      for (int i = 0; i < n; ++i) rows.push_back(entry(label(i), real(rng, 1, 9000)));
      f.unit_segment.attribute =
          uniform(rng, 0, 1) ? SemanticAttribute::kMaximum : SemanticAttribute::kMinimum;
      if (uniform(rng, 0, 2) == 0) f.unit_segment.position = std::vector<std::string>{"the top one"};
      break;
    }
    case InsightType::kRank: {
      const int n = uniform(rng, 1, 6);
      for (int i = 0; i < n; ++i) rows.push_back(entry(label(i), uniform(rng, 1, 13)));
      break;
    }
    case InsightType::kNone:
      break;
  }
  f.data_spec = std::move(rows);
  return f;
}

GeneratedDocument random_document(std::mt19937& rng) {
  GeneratedDocument g;
  if (uniform(rng, 0, 1)) g.doc.title = capitalized(pick(rng, kWords)) + " " + pick(rng, kWords);
  const int paragraphs = uniform(rng, 0, 4);
  for (int p = 0; p < paragraphs; ++p) {
    const int n = uniform(rng, 1, 4);
    std::vector<std::string> sentences;
    for (int i = 0; i < n; ++i) sentences.push_back(random_sentence(rng));
    std::string source;
    std::vector<DataFact> facts;
    for (int i = 0; i < n; ++i) {
      if (i) source += spacing(rng);
      source += sentences[i];
      facts.push_back(random_fact(rng, sentences[i]));
      if (uniform(rng, 0, 3) == 0) facts.back().flags.push_back("note:" + std::to_string(i));
    }
    g.sources.push_back(source);
    g.doc.paragraphs.push_back(std::move(facts));
  }
  return g;
}

DataFact brand_a_fact() {
  DataFact f;
  f.unit_segment.insight_type = InsightType::kProportion;
  f.unit_segment.context = "Brand A holds half the market";
  f.data_spec = std::vector<DataSpecEntry>{
      {"car manufacture", "Brand A", BreakdownKind::kCategorical, "sales percentage", 0.5}};
  return f;
}

}  // namespace gistvis::testing

namespace gistvis::testing {

std::string xml_problem(std::string_view xml) {
  std::vector<std::string> open;
  std::size_t i = 0;
  auto name_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':' ||
           c == '.';
  };
  auto check_entity = [&](std::size_t at) -> bool {
    const std::size_t semi = xml.find(';', at);
    if (semi == std::string_view::npos || semi - at > 10) return false;
    const std::string_view ent = xml.substr(at + 1, semi - at - 1);
    if (ent == "amp" || ent == "lt" || ent == "gt" || ent == "quot" || ent == "apos") return true;
    if (ent.size() > 1 && ent[0] == '#') {
      for (std::size_t k = 1; k < ent.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(ent[k])) && !(k == 1 && ent[k] == 'x'))
          return false;
      return true;
    }
    return false;
  };
  bool root_closed = false;
  while (i < xml.size()) {
    const char c = xml[i];
    if (c == '&') {
      if (!check_entity(i)) return "bad entity at " + std::to_string(i);
      ++i;
      continue;
    }
    if (c != '<') {
      ++i;
      continue;
    }
    if (xml.substr(i, 4) == "<!--") {
      const std::size_t end = xml.find("-->", i);
      if (end == std::string_view::npos) return "unterminated comment";
      i = end + 3;
      continue;
    }
    if (xml.substr(i, 2) == "<!" || xml.substr(i, 2) == "<?") {
      const std::size_t end = xml.find('>', i);
      if (end == std::string_view::npos) return "unterminated declaration";
      i = end + 1;
      continue;
    }
    const bool closing = i + 1 < xml.size() && xml[i + 1] == '/';
    std::size_t j = i + (closing ? 2 : 1);
    const std::size_t name_start = j;
    while (j < xml.size() && name_char(xml[j])) ++j;
    const std::string name(xml.substr(name_start, j - name_start));
    if (name.empty()) return "empty tag name at " + std::to_string(i);
    if (closing) {
      while (j < xml.size() && std::isspace(static_cast<unsigned char>(xml[j]))) ++j;
      if (j >= xml.size() || xml[j] != '>') return "bad closing tag " + name;
      if (open.empty() || open.back() != name) return "mismatched </" + name + ">";
      open.pop_back();
      if (open.empty()) root_closed = true;
      i = j + 1;
      continue;
    }
    if (root_closed) return "content after root element";
    std::set<std::string> seen;
    while (true) {
      while (j < xml.size() && std::isspace(static_cast<unsigned char>(xml[j]))) ++j;
      if (j >= xml.size()) return "unterminated tag " + name;
      if (xml[j] == '>') {
        open.push_back(name);
        i = j + 1;
        break;
      }
      if (xml.substr(j, 2) == "/>") {
        if (open.empty()) root_closed = true;
        i = j + 2;
        break;
      }
      const std::size_t a = j;
      while (j < xml.size() && name_char(xml[j])) ++j;
      const std::string attr(xml.substr(a, j - a));
      if (attr.empty()) return "bad attribute in " + name;
      if (!seen.insert(attr).second) return "duplicate attribute " + attr;
      if (j >= xml.size() || xml[j] != '=') return "attribute without value: " + attr;
      ++j;
      if (j >= xml.size() || (xml[j] != '"' && xml[j] != '\'')) return "unquoted attribute " + attr;
      const char q = xml[j];
      const std::size_t end = xml.find(q, j + 1);
      if (end == std::string_view::npos) return "unterminated attribute " + attr;
      for (std::size_t k = j + 1; k < end; ++k) {
        if (xml[k] == '<') return "'<' in attribute " + attr;
        if (xml[k] == '&' && !check_entity(k)) return "bad entity in attribute " + attr;
      }
      j = end + 1;
    }
  }
  if (!open.empty()) return "unclosed <" + open.back() + ">";
  if (!root_closed) return "no root element";
  return {};
}

std::vector<std::string> attribute_values(std::string_view xml, std::string_view tag,
                                          std::string_view attribute) {
  std::vector<std::string> out;
  const std::string open = "<" + std::string(tag) + " ";
  const std::string key = " " + std::string(attribute) + "=\"";
  for (std::size_t at = xml.find(open); at != std::string_view::npos; at = xml.find(open, at + 1)) {
    const std::size_t end = xml.find('>', at);
    const std::string_view element = xml.substr(at, end - at);
    const std::size_t k = element.find(key);
    if (k == std::string_view::npos) continue;
    const std::size_t v = k + key.size();
    out.emplace_back(element.substr(v, element.find('"', v) - v));
  }
  return out;
}

}  // namespace gistvis::testing
