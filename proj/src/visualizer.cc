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

#include "gistvis/visualizer.h"

#include <algorithm>
#include <cmath>
#include <string_view>

#include "gistvis/extractor.h"
#include "gistvis/text_util.h"

namespace gistvis {

namespace {

std::vector<std::size_t> numeric_rows(const DataFact& fact) {
  std::vector<std::size_t> out;
  if (!fact.data_spec) return out;
  for (std::size_t i = 0; i < fact.data_spec->size(); ++i)
    if (!std::isnan((*fact.data_spec)[i].value)) out.push_back(i);
  return out;
}

int color_of(std::size_t row, const RenderConfig& cfg) {
  const std::size_t n = std::max<std::size_t>(1, cfg.palette.size());
  return static_cast<int>(row % n);
}

std::string attribute_word(const DataFact& fact) {
  if (fact.unit_segment.attribute) return std::string(to_string(*fact.unit_segment.attribute));
  return "unchanged";
}

// Complement rows appended by the extractor are never matched in text.
bool is_complement_row(const DataFact& fact, std::size_t row) {
  return fact.unit_segment.insight_type == InsightType::kProportion &&
         row + 1 == fact.data_spec->size() && row > 0 &&
         (*fact.data_spec)[row].breakdown == kComplementBreakdown;
}

}  // namespace

std::size_t extremal_row(const DataFact& fact) {
  const auto rows = numeric_rows(fact);
  if (rows.empty()) return 0;
  const bool want_min = fact.unit_segment.attribute == SemanticAttribute::kMinimum;
  std::size_t best = rows.front();
  for (std::size_t r : rows) {
    const double v = (*fact.data_spec)[r].value;
    const double b = (*fact.data_spec)[best].value;
    if (want_min ? v < b : v > b) best = r;
  }
  return best;
}

VariantId select_visualization(const DataFact& fact, const RenderConfig& cfg) {
  const InsightType t = fact.unit_segment.insight_type;
  if (t == InsightType::kNone || !fact.data_spec || fact.data_spec->empty())
    return VariantId::kFallbackIcon;
  const auto& rows = *fact.data_spec;
  const std::size_t numeric = numeric_rows(fact).size();

  switch (t) {
    case InsightType::kProportion:
      if (numeric == 0) return VariantId::kFallbackIcon;
      if (cfg.prefer_icons && numeric <= 2) return VariantId::kProportionIconUnit;
      return VariantId::kProportionHbarStacked;
    case InsightType::kValue:
      if (numeric == 0) return VariantId::kFallbackIcon;
      if (numeric == 1) return cfg.prefer_icons ? VariantId::kValueIconNumeric : VariantId::kValueBadge;
      return VariantId::kValueHbarSingle;
    case InsightType::kComparison:
      if (numeric < 2) return VariantId::kFallbackIcon;
      if (numeric == 2) return cfg.prefer_icons ? VariantId::kComparisonIconVs : VariantId::kComparisonHbarPair;
      return VariantId::kComparisonVbarGroup;
    case InsightType::kTrend:
      if (numeric >= 4) return VariantId::kTrendLineArea;
      if (numeric >= 2) return VariantId::kTrendLine;
      if (fact.unit_segment.attribute == SemanticAttribute::kIncreasing)
        return VariantId::kTrendIconArrowUp;
      if (fact.unit_segment.attribute == SemanticAttribute::kDecreasing)
        return VariantId::kTrendIconArrowDown;
      return VariantId::kFallbackIcon;
    case InsightType::kExtreme:
      if (!fact.unit_segment.attribute) return VariantId::kFallbackIcon;
      return numeric >= 2 ? VariantId::kExtremeVbarHighlight : VariantId::kExtremeIconExtremum;
    case InsightType::kRank:
      for (const auto& r : rows)
        if (std::isnan(r.value) || r.value > cfg.max_rank || r.value < 1) return VariantId::kFallbackIcon;
      return VariantId::kRankVbarOrdered;
    case InsightType::kNone:
      break;
  }
  return VariantId::kFallbackIcon;
}

std::vector<std::string> build_tooltip(const DataFact& fact, const RenderConfig& cfg) {
  const InsightType t = fact.unit_segment.insight_type;
  if (t == InsightType::kNone) return {};
  if (select_visualization(fact, cfg) == VariantId::kFallbackIcon)
    return {"May contain data insight of " + std::string(to_string(t)) + "."};

  const auto& rows = *fact.data_spec;
  const auto numeric = numeric_rows(fact);
  std::vector<std::string> lines;
  switch (t) {
    case InsightType::kProportion:
      for (std::size_t r : numeric)
        lines.push_back("The proportion of " + rows[r].breakdown + " is " +
                        format_number(rows[r].value) + ".");
      break;
    case InsightType::kValue:
      for (std::size_t r : numeric)
        lines.push_back("The value of " + rows[r].breakdown + " is " + format_number(rows[r].value) +
                        ".");
      break;
    case InsightType::kExtreme: {
      const std::size_t r = extremal_row(fact);
      lines.push_back("The " + attribute_word(fact) + " of " + rows[r].breakdown + ".");
      break;
    }
    case InsightType::kComparison:
      for (std::size_t i = 0; i < numeric.size(); ++i) {
        for (std::size_t j = i + 1; j < numeric.size(); ++j) {
          const auto& a = rows[numeric[i]];
          const auto& b = rows[numeric[j]];
          lines.push_back("The difference between " + a.breakdown + " and " + b.breakdown + " is " +
                          format_number(std::fabs(a.value - b.value)) + ".");
        }
      }
      break;
    case InsightType::kRank:
      for (const auto& r : rows)
        lines.push_back("Rank " + format_number(r.value) + ": " + r.breakdown);
      break;
    case InsightType::kTrend: {
      lines.push_back(attribute_word(fact));
      if (numeric.size() >= 2) {
        const auto& first = rows[numeric.front()];
        const auto& last = rows[numeric.back()];
        lines.push_back(last.feature + " of " + last.breakdown + " is " + format_number(last.value) +
                        ".");
        lines.push_back("The " + attribute_word(fact) + " is " +
                        format_number(std::fabs(last.value - first.value)));
      }
      break;
    }
    case InsightType::kNone:
      break;
  }
  return lines;
}

EntitySpans compute_entity_spans(const DataFact& fact, const RenderConfig& cfg) {
  EntitySpans out;
  if (!fact.data_spec || fact.data_spec->empty()) return out;
  const std::string& ctx = fact.unit_segment.context;
  const auto& rows = *fact.data_spec;
  const InsightType t = fact.unit_segment.insight_type;

  std::vector<HighlightSpan> candidates;
  const bool has_position = fact.unit_segment.position && !fact.unit_segment.position->empty();
  if (has_position && (t == InsightType::kExtreme || t == InsightType::kValue)) {
    const auto& phrases = *fact.unit_segment.position;
    for (std::size_t i = 0; i < phrases.size(); ++i) {
      const std::size_t row = t == InsightType::kExtreme ? extremal_row(fact)
                                                         : std::min(i, rows.size() - 1);
      auto at = find_word_ci(ctx, phrases[i]);
      if (!at) at = ctx.find(phrases[i]) == std::string::npos
                        ? std::nullopt
                        : std::optional<std::size_t>(ctx.find(phrases[i]));
      if (!at) {
        out.flags.push_back("entity_not_found:" + phrases[i]);
        continue;
      }
      candidates.push_back({*at, *at + phrases[i].size(), color_of(row, cfg), static_cast<int>(row)});
    }
  } else {
    std::vector<std::string> seen;
    for (std::size_t row = 0; row < rows.size(); ++row) {
      const std::string& b = rows[row].breakdown;
      if (is_complement_row(fact, row)) continue;
      if (std::find(seen.begin(), seen.end(), to_lower_ascii(b)) != seen.end()) continue;
      seen.push_back(to_lower_ascii(b));
      auto at = find_word_ci(ctx, b);
      if (!at) {
        out.flags.push_back("entity_not_found:" + b);
        continue;
      }
      candidates.push_back({*at, *at + b.size(), color_of(row, cfg), static_cast<int>(row)});
    }
  }

  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const HighlightSpan& a, const HighlightSpan& b) {
                     const auto la = a.end - a.start;
                     const auto lb = b.end - b.start;
                     return la != lb ? la > lb : a.start < b.start;
                   });
  for (const auto& c : candidates) {
    const bool overlaps = std::any_of(out.spans.begin(), out.spans.end(), [&](const HighlightSpan& s) {
      return c.start < s.end && s.start < c.end;
    });
    if (!overlaps) out.spans.push_back(c);
  }
  std::sort(out.spans.begin(), out.spans.end(),
            [](const HighlightSpan& a, const HighlightSpan& b) { return a.start < b.start; });
  return out;
}

VisualizationSpec build_visualization(const DataFact& fact, std::size_t fact_index,
                                      const RenderConfig& cfg) {
  VisualizationSpec spec;
  spec.variant = select_visualization(fact, cfg);
  spec.tooltip_lines = build_tooltip(fact, cfg);
  spec.palette = cfg.palette;
  spec.height = cfg.glyph_height;

  auto add_mark = [&](std::size_t row) {
    const auto& r = (*fact.data_spec)[row];
    spec.marks.push_back({"mark-" + std::to_string(fact_index) + "-" + std::to_string(row),
                          r.breakdown, r.value, color_of(row, cfg), static_cast<int>(row)});
  };
  switch (spec.variant) {
    case VariantId::kFallbackIcon:
      break;
    case VariantId::kTrendIconArrowUp:
    case VariantId::kTrendIconArrowDown:
      add_mark(0);
      break;
    case VariantId::kExtremeIconExtremum:
      add_mark(extremal_row(fact));
      break;
    case VariantId::kRankVbarOrdered:
      for (std::size_t i = 0; i < fact.data_spec->size(); ++i) add_mark(i);
      break;
    default:
      for (std::size_t i : numeric_rows(fact)) add_mark(i);
      break;
  }
  if (spec.variant != VariantId::kFallbackIcon) {
    for (const auto& span : compute_entity_spans(fact, cfg).spans) {
      const bool bound = std::any_of(spec.marks.begin(), spec.marks.end(),
                                     [&](const Mark& m) { return m.row == span.row; });
      if (bound) spec.highlight_spans.push_back(span);
    }
  }
  spec.svg = render_svg(spec, fact, cfg);
  return spec;
}

}  // namespace gistvis
