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

// SVG 1.1 output for every catalog variant. Element and attribute order is
// fixed so output is byte-stable.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "gistvis/text_util.h"
#include "gistvis/visualizer.h"

namespace gistvis {

namespace {

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::round(v * 100.0) / 100.0);
  std::string s = buf;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

class SvgWriter {
 public:
  SvgWriter(double width, int height, VariantId variant) : width_(width), height_(height) {
    body_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << px(width)
          << "\" height=\"" << height << "\" viewBox=\"0 0 " << px(width) << " " << height
          << "\" class=\"gistvis-wsv\" data-variant=\"" << to_string(variant) << "\">";
  }

  void rect(const std::string& id, double x, double y, double w, double h, const std::string& fill,
            double opacity = 1.0, double rx = 0) {
    body_ << "<rect";
    if (!id.empty()) body_ << " id=\"" << id << "\"";
    body_ << " x=\"" << px(x) << "\" y=\"" << px(y) << "\" width=\"" << px(std::max(0.0, w))
          << "\" height=\"" << px(std::max(0.0, h)) << "\"";
    if (rx > 0) body_ << " rx=\"" << px(rx) << "\"";
    body_ << " fill=\"" << fill << "\"";
    if (opacity < 1.0) body_ << " fill-opacity=\"" << px(opacity) << "\"";
    body_ << "/>";
  }

  void circle(const std::string& id, double cx, double cy, double r, const std::string& fill,
              const std::string& stroke = "") {
    body_ << "<circle";
    if (!id.empty()) body_ << " id=\"" << id << "\"";
    body_ << " cx=\"" << px(cx) << "\" cy=\"" << px(cy) << "\" r=\"" << px(r) << "\" fill=\"" << fill
          << "\"";
    if (!stroke.empty()) body_ << " stroke=\"" << stroke << "\" stroke-width=\"1\"";
    body_ << "/>";
  }

  void path(const std::string& id, const std::string& d, const std::string& fill,
            const std::string& stroke = "", double opacity = 1.0) {
    body_ << "<path";
    if (!id.empty()) body_ << " id=\"" << id << "\"";
    body_ << " d=\"" << d << "\" fill=\"" << fill << "\"";
    if (opacity < 1.0) body_ << " fill-opacity=\"" << px(opacity) << "\"";
    if (!stroke.empty()) body_ << " stroke=\"" << stroke << "\" stroke-width=\"1.2\"";
    body_ << "/>";
  }

  void text(double x, double y, const std::string& content, const std::string& fill, int size,
            const std::string& anchor = "start") {
    body_ << "<text x=\"" << px(x) << "\" y=\"" << px(y) << "\" font-family=\"sans-serif\" font-size=\""
          << size << "\" fill=\"" << fill << "\"";
    if (anchor != "start") body_ << " text-anchor=\"" << anchor << "\"";
    body_ << ">" << xml_escape(content) << "</text>";
  }

  void open_group(const std::string& id) { body_ << "<g id=\"" << id << "\">"; }
  void close_group() { body_ << "</g>"; }

  std::string finish() {
    body_ << "</svg>";
    return body_.str();
  }

 private:
  double width_;
  int height_;
  std::ostringstream body_;
};

const std::string& fill_of(const Mark& m, const RenderConfig& cfg) {
  static const std::string kGray = "#999999";
  if (cfg.palette.empty()) return kGray;
  return cfg.palette[static_cast<std::size_t>(m.color) % cfg.palette.size()];
}

double max_abs(const std::vector<Mark>& marks) {
  double m = 0;
  for (const auto& mk : marks)
    if (!std::isnan(mk.value)) m = std::max(m, std::fabs(mk.value));
  return m > 0 ? m : 1;
}

constexpr const char* kNeutral = "#8c8c8c";

std::string fallback_svg(const RenderConfig& cfg) {
  const int h = cfg.glyph_height;
  SvgWriter w(h, h, VariantId::kFallbackIcon);
  w.circle("", h / 2.0, h / 2.0, h / 2.0 - 1, "none", kNeutral);
  w.text(h / 2.0, h - 3.5, "?", kNeutral, h - 4, "middle");
  return w.finish();
}

// Vertical bars bottom-aligned; `order` gives the left-to-right mark order.
void vbars(SvgWriter& w, const std::vector<Mark>& marks, const std::vector<std::size_t>& order,
           const std::vector<double>& heights, const RenderConfig& cfg,
           const std::vector<double>& opacity) {
  const double gap = 2;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Mark& m = marks[order[k]];
    const double x = k * (cfg.mark_width + gap);
    const double h = heights[order[k]];
    w.rect(m.id, x, cfg.glyph_height - 1 - h, cfg.mark_width, h, fill_of(m, cfg), opacity[order[k]]);
  }
}

double vbars_width(std::size_t n, const RenderConfig& cfg) {
  return n == 0 ? 0 : n * cfg.mark_width + (n - 1) * 2.0;
}

}  // namespace

std::string render_svg(const VisualizationSpec& spec, const DataFact& fact,
                       const RenderConfig& cfg) {
  const int H = cfg.glyph_height;
  const auto& marks = spec.marks;
  if (spec.variant == VariantId::kFallbackIcon || marks.empty()) return fallback_svg(cfg);
  const double usable = H - 2;  // one pixel padding top and bottom

  std::vector<std::size_t> identity(marks.size());
  for (std::size_t i = 0; i < marks.size(); ++i) identity[i] = i;

  switch (spec.variant) {
    case VariantId::kProportionHbarStacked: {
      double total = 0;
      for (const auto& m : marks) total += std::fabs(m.value);
      const double scale = cfg.bar_length / std::max(1.0, total);
      SvgWriter w(cfg.bar_length, H, spec.variant);
      double x = 0;
      for (const auto& m : marks) {
        const double len = std::fabs(m.value) * scale;
        w.rect(m.id, x, 2, len, H - 4, fill_of(m, cfg));
        x += len;
      }
      return w.finish();
    }
    case VariantId::kProportionIconUnit: {
      const int units = 10;
      const double size = H - 6;
      const double step = size + 2;
      SvgWriter w(units * step - 2, H, spec.variant);
      const Mark& m = marks.front();
      const int filled = static_cast<int>(std::lround(std::clamp(m.value, 0.0, 1.0) * units));
      w.open_group(m.id);
      for (int i = 0; i < filled; ++i) w.rect("", i * step, 3, size, size, fill_of(m, cfg), 1.0, 1.5);
      w.close_group();
      // The remainder stands for the second row when there is one.
      if (marks.size() > 1) w.open_group(marks[1].id);
      for (int i = filled; i < units; ++i) w.rect("", i * step, 3, size, size, "#dddddd", 1.0, 1.5);
      if (marks.size() > 1) w.close_group();
      return w.finish();
    }
    case VariantId::kValueBadge:
    case VariantId::kValueIconNumeric: {
      const Mark& m = marks.front();
      const std::string label = format_number(m.value);
      const bool icon = spec.variant == VariantId::kValueIconNumeric;
      const double offset = icon ? H : 0;
      const double width = offset + 6.0 * label.size() + 6;
      SvgWriter w(width, H, spec.variant);
      if (icon) {
        w.text(H / 2.0 - 1, H - 3, "#", kNeutral, H - 3, "middle");
      }
      w.rect(m.id, offset, 1, width - offset, H - 2, fill_of(m, cfg), 1.0, 3);
      w.text(offset + 3, H - 3.5, label, "#ffffff", H - 4);
      return w.finish();
    }
    case VariantId::kValueHbarSingle:
    case VariantId::kComparisonHbarPair: {
      const double lane = usable / marks.size();
      const double bar_h = std::max(1.0, lane - 1);
      const double scale = cfg.bar_length / max_abs(marks);
      SvgWriter w(cfg.bar_length, H, spec.variant);
      for (std::size_t i = 0; i < marks.size(); ++i)
        w.rect(marks[i].id, 0, 1 + i * lane, std::fabs(marks[i].value) * scale, bar_h,
               fill_of(marks[i], cfg));
      return w.finish();
    }
    case VariantId::kComparisonIconVs: {
      const double top = max_abs(marks);
      SvgWriter w(2 * H + 14, H, spec.variant);
      for (std::size_t i = 0; i < 2; ++i) {
        const double side = std::max(2.0, usable * std::sqrt(std::fabs(marks[i].value) / top));
        const double cx = i == 0 ? H / 2.0 : H + 14 + H / 2.0;
        w.rect(marks[i].id, cx - side / 2, H / 2.0 - side / 2, side, side, fill_of(marks[i], cfg));
      }
      w.text(H + 7, H - 4, "vs", kNeutral, 9, "middle");
      return w.finish();
    }
    case VariantId::kComparisonVbarGroup:
    case VariantId::kExtremeVbarHighlight: {
      const double top = max_abs(marks);
      std::vector<double> heights, opacity;
      const std::size_t focus =
          spec.variant == VariantId::kExtremeVbarHighlight ? extremal_row(fact) : marks.size();
      for (const auto& m : marks) {
        heights.push_back(std::fabs(m.value) / top * usable);
        const bool dim = spec.variant == VariantId::kExtremeVbarHighlight &&
                         static_cast<std::size_t>(m.row) != focus;
        opacity.push_back(dim ? 0.35 : 1.0);
      }
      SvgWriter w(vbars_width(marks.size(), cfg), H, spec.variant);
      vbars(w, marks, identity, heights, cfg, opacity);
      return w.finish();
    }
    case VariantId::kRankVbarOrdered: {
      double max_rank = 1;
      for (const auto& m : marks) max_rank = std::max(max_rank, m.value);
      std::vector<std::size_t> order = identity;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return marks[a].value < marks[b].value; });
      std::vector<double> heights, opacity(marks.size(), 1.0);
      for (const auto& m : marks) heights.push_back((max_rank + 1 - m.value) / max_rank * usable);
      SvgWriter w(vbars_width(marks.size(), cfg), H, spec.variant);
      vbars(w, marks, order, heights, cfg, opacity);
      return w.finish();
    }
    case VariantId::kTrendLine:
    case VariantId::kTrendLineArea: {
      double lo = marks.front().value, hi = marks.front().value;
      for (const auto& m : marks) {
        lo = std::min(lo, m.value);
        hi = std::max(hi, m.value);
      }
      const double step = 10;
      const double r = 1.5;
      const double width = (marks.size() - 1) * step + 2 * r;
      auto y_of = [&](double v) {
        const double span = usable - 2 * r;
        const double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
        return H - 1 - r - t * span;
      };
      std::ostringstream line;
      for (std::size_t i = 0; i < marks.size(); ++i)
        line << (i ? " L" : "M") << px(r + i * step) << " " << px(y_of(marks[i].value));
      SvgWriter w(width, H, spec.variant);
      if (spec.variant == VariantId::kTrendLineArea) {
        std::ostringstream area;
        area << line.str() << " L" << px(r + (marks.size() - 1) * step) << " " << px(H - 1) << " L"
             << px(r) << " " << px(H - 1) << " Z";
        w.path("", area.str(), kNeutral, "", 0.25);
      }
      w.path("", line.str(), "none", kNeutral);
      for (std::size_t i = 0; i < marks.size(); ++i)
        w.circle(marks[i].id, r + i * step, y_of(marks[i].value), r, fill_of(marks[i], cfg));
      return w.finish();
    }
    case VariantId::kTrendIconArrowUp:
    case VariantId::kTrendIconArrowDown: {
      const bool up = spec.variant == VariantId::kTrendIconArrowUp;
      const double h = H;
      std::ostringstream d;
      if (up) {
        d << "M" << px(h / 2) << " 1 L" << px(h - 1) << " " << px(h / 2) << " L" << px(h * 0.65) << " "
          << px(h / 2) << " L" << px(h * 0.65) << " " << px(h - 1) << " L" << px(h * 0.35) << " "
          << px(h - 1) << " L" << px(h * 0.35) << " " << px(h / 2) << " L1 " << px(h / 2) << " Z";
      } else {
        d << "M" << px(h / 2) << " " << px(h - 1) << " L" << px(h - 1) << " " << px(h / 2) << " L"
          << px(h * 0.65) << " " << px(h / 2) << " L" << px(h * 0.65) << " 1 L" << px(h * 0.35)
          << " 1 L" << px(h * 0.35) << " " << px(h / 2) << " L1 " << px(h / 2) << " Z";
      }
      SvgWriter w(h, H, spec.variant);
      w.path(marks.front().id, d.str(), fill_of(marks.front(), cfg));
      return w.finish();
    }
    case VariantId::kExtremeIconExtremum: {
      const bool max = fact.unit_segment.attribute != SemanticAttribute::kMinimum;
      const double h = H;
      std::ostringstream d;
      // Peak (maximum) or trough (minimum) glyph on a baseline.
      if (max)
        d << "M1 " << px(h - 1) << " L" << px(h / 2) << " 2 L" << px(h - 1) << " " << px(h - 1) << " Z";
      else
        d << "M1 1 L" << px(h / 2) << " " << px(h - 2) << " L" << px(h - 1) << " 1 Z";
      SvgWriter w(h, H, spec.variant);
      w.path(marks.front().id, d.str(), fill_of(marks.front(), cfg));
      return w.finish();
    }
    case VariantId::kFallbackIcon:
      break;
  }
  return fallback_svg(cfg);
}

}  // namespace gistvis
