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


#include <sstream>

#include "gistvis/pipeline.h"
#include "gistvis/text_util.h"

namespace gistvis {

namespace {

constexpr std::string_view kStyle =
    "body{font-family:Georgia,serif;line-height:1.6;max-width:42em;margin:2em auto;padding:0 1em}"
    ".gv-wsv{display:inline-block;vertical-align:-2px;margin:0 .2em}"
    ".gv-entity{border-radius:2px;padding:0 1px}";

// Collapses whitespace runs to one space without trimming the ends.
std::string collapse(std::string_view s) {
  std::string out;
  bool in_space = false;
  for (char c : s) {
    if (is_space(c)) {
      if (!in_space) out += ' ';
      in_space = true;
    } else {
      out += c;
      in_space = false;
    }
  }
  return out;
}

std::string escaped(std::string_view s) { return xml_escape(collapse(s)); }

void open_page(std::ostringstream& out, const std::optional<std::string>& title) {
  out << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\"/>\n<title>"
      << xml_escape(title.value_or("Untitled document")) << "</title>\n<style>" << kStyle
      << "</style>\n</head>\n<body>\n<article>\n";
  if (title) out << "<h1>" << xml_escape(*title) << "</h1>\n";
}

void close_page(std::ostringstream& out) { out << "</article>\n</body>\n</html>\n"; }

std::string tooltip_attr(const std::vector<std::string>& lines) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out += "&#10;";
    out += xml_escape(lines[i]);
  }
  return out;
}

void emit_fact(std::ostringstream& out, const DataFact& fact, std::size_t index,
               const RenderConfig& cfg) {
  const std::string& ctx = fact.unit_segment.context;
  if (fact.unit_segment.insight_type == InsightType::kNone || !fact.visualization) {
    out << escaped(ctx);
    return;
  }
  const VisualizationSpec& vis = *fact.visualization;
  out << "<span class=\"gv-seg\" data-fact=\"" << index << "\" data-type=\""
      << to_string(fact.unit_segment.insight_type) << "\" title=\"" << tooltip_attr(vis.tooltip_lines)
      << "\">";
  std::size_t at = 0;
  for (const auto& span : vis.highlight_spans) {
    if (span.start < at || span.end > ctx.size() || span.start >= span.end) continue;
    out << escaped(std::string_view(ctx).substr(at, span.start - at));
    const std::string& color =
        cfg.palette.empty() ? std::string("#999999")
                            : cfg.palette[static_cast<std::size_t>(span.color) % cfg.palette.size()];
    out << "<mark class=\"gv-entity\" data-mark=\"mark-" << index << "-" << span.row
        << "\" style=\"background:" << color << "40\">"
        << escaped(std::string_view(ctx).substr(span.start, span.end - span.start)) << "</mark>";
    at = span.end;
  }
  out << escaped(std::string_view(ctx).substr(at)) << "</span>";
  out << "<span class=\"gv-wsv\">" << vis.svg << "</span>";
}

}  // namespace

std::string emit_html(const AugmentedDocument& doc, const RenderConfig& cfg) {
  std::ostringstream out;
  open_page(out, doc.title);
  std::size_t index = 0;
  for (const auto& paragraph : doc.paragraphs) {
    out << "<p>";
    for (std::size_t i = 0; i < paragraph.size(); ++i) {
      if (i) out << " ";
      emit_fact(out, paragraph[i], index++, cfg);
    }
    out << "</p>\n";
  }
  close_page(out);
  return out.str();
}

std::string emit_plain_html(const std::optional<std::string>& title,
                            const std::vector<std::string>& paragraphs) {
  std::ostringstream out;
  open_page(out, title);
  for (const auto& p : paragraphs) out << "<p>" << xml_escape(normalize_whitespace(p)) << "</p>\n";
  close_page(out);
  return out.str();
}

}  // namespace gistvis
