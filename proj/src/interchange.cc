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

#include "gistvis/interchange.h"

#include <cmath>
#include <initializer_list>
#include <limits>

#include "json.hpp"

namespace gistvis {

using Json = nlohmann::ordered_json;

namespace {

Json number_to_json(double v) {
  if (std::isnan(v)) return "NaN";
  return v;
}

Json span_to_json(const HighlightSpan& s) {
  return Json{{"start", s.start}, {"end", s.end}, {"color", s.color}, {"row", s.row}};
}

Json visualization_to_json(const VisualizationSpec& vis) {
  Json marks = Json::array();
  for (const auto& m : vis.marks) {
    marks.push_back(Json{{"id", m.id},
                         {"label", m.label},
                         {"value", number_to_json(m.value)},
                         {"color", m.color},
                         {"row", m.row}});
  }
  Json spans = Json::array();
  for (const auto& s : vis.highlight_spans) spans.push_back(span_to_json(s));
  Json out;
  out["variant"] = std::string(to_string(vis.variant));
  out["marks"] = std::move(marks);
  out["tooltipLines"] = vis.tooltip_lines;
  out["highlightSpans"] = std::move(spans);
  out["palette"] = vis.palette;
  out["height"] = vis.height;
  out["maxWidth"] = vis.max_width;
  out["svg"] = vis.svg;
  return out;
}

Json fact_to_json(const DataFact& fact) {
  Json seg;
  seg["insightType"] = std::string(to_string(fact.unit_segment.insight_type));
  seg["context"] = fact.unit_segment.context;
  if (fact.unit_segment.attribute)
    seg["attribute"] = std::string(to_string(*fact.unit_segment.attribute));
  if (fact.unit_segment.position) seg["position"] = *fact.unit_segment.position;

  Json out;
  out["unitSegmentSpec"] = std::move(seg);
  if (fact.data_spec) {
    Json rows = Json::array();
    for (const auto& r : *fact.data_spec) {
      rows.push_back(Json{{"space", r.space},
                          {"breakdown", r.breakdown},
                          {"breakdownKind", std::string(to_string(r.breakdown_kind))},
                          {"feature", r.feature},
                          {"value", number_to_json(r.value)}});
    }
    out["dataSpec"] = std::move(rows);
  }
  if (fact.visualization) out["visualization"] = visualization_to_json(*fact.visualization);
  if (!fact.flags.empty()) out["flags"] = fact.flags;
  return out;
}

// Strict reader helpers. Every accessor names the JSON path on failure.
class Reader {
 public:
  [[noreturn]] static void fail(const std::string& path, const std::string& what) {
    throw InterchangeError(path, what);
  }

  static const Json& object(const Json& j, const std::string& path,
                            std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) fail(path, "expected object");
    for (const auto& [key, _] : j.items()) {
      bool known = false;
      for (auto a : allowed) known = known || key == a;
      if (!known) fail(path + "." + key, "unknown field");
    }
    return j;
  }

  static const Json& required(const Json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing required field");
    return *it;
  }

  static std::string string(const Json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected string");
    return j.get<std::string>();
  }

  static double number(const Json& j, const std::string& path) {
    if (j.is_string() && j.get<std::string>() == "NaN") return std::numeric_limits<double>::quiet_NaN();
    if (!j.is_number()) fail(path, "expected number or \"NaN\"");
    return j.get<double>();
  }

  static long long integer(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected integer");
    return j.get<long long>();
  }

  static std::size_t index(const Json& j, const std::string& path) {
    const long long v = integer(j, path);
    if (v < 0) fail(path, "expected non-negative integer");
    return static_cast<std::size_t>(v);
  }

  static const Json& array(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected array");
    return j;
  }

  static std::vector<std::string> strings(const Json& j, const std::string& path) {
    array(j, path);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i)
      out.push_back(string(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }
};

VisualizationSpec visualization_from_json(const Json& j, const std::string& path) {
  Reader::object(j, path,
                 {"variant", "marks", "tooltipLines", "highlightSpans", "palette", "height",
                  "maxWidth", "svg"});
  VisualizationSpec vis;
  const std::string vname = Reader::string(Reader::required(j, path, "variant"), path + ".variant");
  auto variant = variant_from_string(vname);
  if (!variant) Reader::fail(path + ".variant", "unknown variant '" + vname + "'");
  vis.variant = *variant;

  const std::string mpath = path + ".marks";
  const Json& marks = Reader::array(Reader::required(j, path, "marks"), mpath);
  for (std::size_t i = 0; i < marks.size(); ++i) {
    const std::string p = mpath + "[" + std::to_string(i) + "]";
    Reader::object(marks[i], p, {"id", "label", "value", "color", "row"});
    Mark m;
    m.id = Reader::string(Reader::required(marks[i], p, "id"), p + ".id");
    m.label = Reader::string(Reader::required(marks[i], p, "label"), p + ".label");
    m.value = Reader::number(Reader::required(marks[i], p, "value"), p + ".value");
    m.color = static_cast<int>(Reader::index(Reader::required(marks[i], p, "color"), p + ".color"));
    m.row = static_cast<int>(Reader::index(Reader::required(marks[i], p, "row"), p + ".row"));
    vis.marks.push_back(std::move(m));
  }
  vis.tooltip_lines =
      Reader::strings(Reader::required(j, path, "tooltipLines"), path + ".tooltipLines");

  const std::string spath = path + ".highlightSpans";
  const Json& spans = Reader::array(Reader::required(j, path, "highlightSpans"), spath);
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const std::string p = spath + "[" + std::to_string(i) + "]";
    Reader::object(spans[i], p, {"start", "end", "color", "row"});
    HighlightSpan s;
    s.start = Reader::index(Reader::required(spans[i], p, "start"), p + ".start");
    s.end = Reader::index(Reader::required(spans[i], p, "end"), p + ".end");
    s.color = static_cast<int>(Reader::index(Reader::required(spans[i], p, "color"), p + ".color"));
    s.row = static_cast<int>(Reader::index(Reader::required(spans[i], p, "row"), p + ".row"));
    if (s.start >= s.end) Reader::fail(p, "span start must precede end");
    vis.highlight_spans.push_back(s);
  }
  vis.palette = Reader::strings(Reader::required(j, path, "palette"), path + ".palette");
  vis.height = static_cast<int>(Reader::index(Reader::required(j, path, "height"), path + ".height"));
  vis.max_width =
      static_cast<int>(Reader::index(Reader::required(j, path, "maxWidth"), path + ".maxWidth"));
  vis.svg = Reader::string(Reader::required(j, path, "svg"), path + ".svg");
  return vis;
}

DataFact fact_from_json(const Json& j, const std::string& path) {
  Reader::object(j, path, {"unitSegmentSpec", "dataSpec", "visualization", "flags"});
  DataFact fact;

  const std::string upath = path + ".unitSegmentSpec";
  const Json& seg = Reader::required(j, path, "unitSegmentSpec");
  Reader::object(seg, upath, {"insightType", "context", "attribute", "position"});
  const std::string tname =
      Reader::string(Reader::required(seg, upath, "insightType"), upath + ".insightType");
  auto type = insight_type_from_string(tname);
  if (!type) Reader::fail(upath + ".insightType", "unknown insight type '" + tname + "'");
  fact.unit_segment.insight_type = *type;
  fact.unit_segment.context =
      Reader::string(Reader::required(seg, upath, "context"), upath + ".context");
  if (auto it = seg.find("attribute"); it != seg.end()) {
    const std::string aname = Reader::string(*it, upath + ".attribute");
    auto attr = attribute_from_string(aname);
    if (!attr) Reader::fail(upath + ".attribute", "unknown attribute '" + aname + "'");
    fact.unit_segment.attribute = *attr;
  }
  if (auto it = seg.find("position"); it != seg.end())
    fact.unit_segment.position = Reader::strings(*it, upath + ".position");

  if (auto it = j.find("dataSpec"); it != j.end()) {
    const std::string dpath = path + ".dataSpec";
    Reader::array(*it, dpath);
    std::vector<DataSpecEntry> rows;
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string p = dpath + "[" + std::to_string(i) + "]";
      const Json& r = (*it)[i];
      Reader::object(r, p, {"space", "breakdown", "breakdownKind", "feature", "value"});
      DataSpecEntry e;
      e.space = Reader::string(Reader::required(r, p, "space"), p + ".space");
      e.breakdown = Reader::string(Reader::required(r, p, "breakdown"), p + ".breakdown");
      const std::string kname =
          Reader::string(Reader::required(r, p, "breakdownKind"), p + ".breakdownKind");
      auto kind = breakdown_kind_from_string(kname);
      if (!kind) Reader::fail(p + ".breakdownKind", "unknown breakdown kind '" + kname + "'");
      e.breakdown_kind = *kind;
      e.feature = Reader::string(Reader::required(r, p, "feature"), p + ".feature");
      e.value = Reader::number(Reader::required(r, p, "value"), p + ".value");
      rows.push_back(std::move(e));
    }
    fact.data_spec = std::move(rows);
  }
  if (auto it = j.find("visualization"); it != j.end())
    fact.visualization = visualization_from_json(*it, path + ".visualization");
  if (auto it = j.find("flags"); it != j.end()) fact.flags = Reader::strings(*it, path + ".flags");
  return fact;
}

}  // namespace

std::string to_interchange(const AugmentedDocument& doc) {
  if (auto report = validate(doc); !report.empty())
    throw std::invalid_argument("invalid document: " + report.front().path + ": " +
                                report.front().message);
  Json root;
  root["schema_version"] = kSchemaVersion;
  if (doc.title) root["title"] = *doc.title;
  Json paragraphs = Json::array();
  for (const auto& para : doc.paragraphs) {
    Json facts = Json::array();
    for (const auto& fact : para) facts.push_back(fact_to_json(fact));
    paragraphs.push_back(std::move(facts));
  }
  root["paragraphs"] = std::move(paragraphs);
  return root.dump(2) + "\n";
}

AugmentedDocument from_interchange(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InterchangeError("$", std::string("not valid JSON: ") + e.what());
  }
  const std::string path = "$";
  Reader::object(root, path, {"schema_version", "title", "paragraphs"});
  const long long version =
      Reader::integer(Reader::required(root, path, "schema_version"), "$.schema_version");
  if (version != kSchemaVersion)
    Reader::fail("$.schema_version", "unsupported schema version " + std::to_string(version));

  AugmentedDocument doc;
  if (auto it = root.find("title"); it != root.end()) doc.title = Reader::string(*it, "$.title");
  const Json& paragraphs = Reader::array(Reader::required(root, path, "paragraphs"), "$.paragraphs");
  for (std::size_t p = 0; p < paragraphs.size(); ++p) {
    const std::string ppath = "$.paragraphs[" + std::to_string(p) + "]";
    Reader::array(paragraphs[p], ppath);
    std::vector<DataFact> facts;
    for (std::size_t f = 0; f < paragraphs[p].size(); ++f)
      facts.push_back(fact_from_json(paragraphs[p][f], ppath + "[" + std::to_string(f) + "]"));
    doc.paragraphs.push_back(std::move(facts));
  }
  return doc;
}

}  // namespace gistvis
