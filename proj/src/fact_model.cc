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

#include "gistvis/fact_model.h"

#include <cmath>
#include <utility>

#include "gistvis/text_util.h"

namespace gistvis {

namespace {

constexpr std::array<std::pair<InsightType, std::string_view>, 7> kTypeNames = {{
    {InsightType::kValue, "value"},
    {InsightType::kTrend, "trend"},
    {InsightType::kComparison, "comparison"},
    {InsightType::kProportion, "proportion"},
    {InsightType::kExtreme, "extreme"},
    {InsightType::kRank, "rank"},
    {InsightType::kNone, "none"},
}};

constexpr std::array<std::pair<SemanticAttribute, std::string_view>, 4> kAttributeNames = {{
    {SemanticAttribute::kIncreasing, "increasing"},
    {SemanticAttribute::kDecreasing, "decreasing"},
    {SemanticAttribute::kMaximum, "maximum"},
    {SemanticAttribute::kMinimum, "minimum"},
}};

constexpr std::array<std::pair<VariantId, std::string_view>, 16> kVariantNames = {{
    {VariantId::kProportionHbarStacked, "proportion.hbar_stacked"},
    {VariantId::kProportionIconUnit, "proportion.icon_unit"},
    {VariantId::kValueBadge, "value.badge"},
    {VariantId::kValueIconNumeric, "value.icon_numeric"},
    {VariantId::kValueHbarSingle, "value.hbar_single"},
    {VariantId::kComparisonVbarGroup, "comparison.vbar_group"},
    {VariantId::kComparisonHbarPair, "comparison.hbar_pair"},
    {VariantId::kComparisonIconVs, "comparison.icon_vs"},
    {VariantId::kTrendLine, "trend.line"},
    {VariantId::kTrendLineArea, "trend.line_area"},
    {VariantId::kTrendIconArrowUp, "trend.icon_arrow_up"},
    {VariantId::kTrendIconArrowDown, "trend.icon_arrow_down"},
    {VariantId::kExtremeVbarHighlight, "extreme.vbar_highlight"},
    {VariantId::kExtremeIconExtremum, "extreme.icon_extremum"},
    {VariantId::kRankVbarOrdered, "rank.vbar_ordered"},
    {VariantId::kFallbackIcon, "fallback_icon"},
}};

template <typename Table, typename E>
std::string_view name_of(const Table& table, E e) {
  for (const auto& [k, v] : table)
    if (k == e) return v;
  return "?";
}

template <typename E, typename Table>
std::optional<E> lookup(const Table& table, std::string_view s) {
  for (const auto& [k, v] : table)
    if (v == s) return k;
  return std::nullopt;
}

bool same_number(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

void add(ValidationReport& report, std::string_view code, std::string path, std::string message) {
  report.push_back({std::string(code), std::move(path), std::move(message)});
}

bool attribute_fits(InsightType t, SemanticAttribute a) {
  switch (a) {
    case SemanticAttribute::kIncreasing:
    case SemanticAttribute::kDecreasing:
      return t == InsightType::kTrend;
    case SemanticAttribute::kMaximum:
    case SemanticAttribute::kMinimum:
      return t == InsightType::kExtreme;
  }
  return false;
}

}  // namespace

std::string_view to_string(InsightType t) { return name_of(kTypeNames, t); }
std::string_view to_string(SemanticAttribute a) { return name_of(kAttributeNames, a); }
std::string_view to_string(BreakdownKind k) {
  return k == BreakdownKind::kTemporal ? "temporal" : "categorical";
}
std::string_view to_string(VariantId v) { return name_of(kVariantNames, v); }

std::optional<InsightType> insight_type_from_string(std::string_view s) {
  return lookup<InsightType>(kTypeNames, s);
}
std::optional<SemanticAttribute> attribute_from_string(std::string_view s) {
  return lookup<SemanticAttribute>(kAttributeNames, s);
}
std::optional<BreakdownKind> breakdown_kind_from_string(std::string_view s) {
  if (s == "categorical") return BreakdownKind::kCategorical;
  if (s == "temporal") return BreakdownKind::kTemporal;
  return std::nullopt;
}
std::optional<VariantId> variant_from_string(std::string_view s) {
  return lookup<VariantId>(kVariantNames, s);
}

bool DataSpecEntry::operator==(const DataSpecEntry& o) const {
  return space == o.space && breakdown == o.breakdown && breakdown_kind == o.breakdown_kind &&
         feature == o.feature && same_number(value, o.value);
}

bool Mark::operator==(const Mark& o) const {
  return id == o.id && label == o.label && same_number(value, o.value) && color == o.color &&
         row == o.row;
}

ValidationReport validate(const DataFact& fact, std::string_view path) {
  ValidationReport report;
  const std::string base(path);
  const auto& seg = fact.unit_segment;
  const InsightType t = seg.insight_type;

  if (trim(seg.context).empty())
    add(report, violation::kContextEmpty, base + ".context", "context must be non-empty");

  if (seg.attribute && !attribute_fits(t, *seg.attribute)) {
    add(report, violation::kAttributeType, base + ".attribute",
        "attribute " + std::string(to_string(*seg.attribute)) + " not legal for type " +
            std::string(to_string(t)));
  }

  if (seg.position) {
    if (t != InsightType::kExtreme && t != InsightType::kValue) {
      add(report, violation::kPositionType, base + ".position",
          "position not applicable to type " + std::string(to_string(t)));
    } else if (t == InsightType::kExtreme && seg.position->size() != 1) {
      add(report, violation::kPositionArity, base + ".position",
          "extreme requires exactly one position phrase");
    } else if (t == InsightType::kValue && seg.position->empty()) {
      add(report, violation::kPositionArity, base + ".position",
          "value requires at least one position phrase");
    }
  }

  if (t == InsightType::kNone) {
    if (fact.data_spec)
      add(report, violation::kDataSpecForbidden, base + ".dataSpec", "data_spec forbidden for none");
    return report;
  }
  if (!fact.data_spec) {
    add(report, violation::kDataSpecMissing, base + ".dataSpec",
        "data_spec required for type " + std::string(to_string(t)));
    return report;
  }

  const auto& rows = *fact.data_spec;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const std::string row_path = base + ".dataSpec[" + std::to_string(i) + "]";
    if (trim(row.space).empty() || trim(row.breakdown).empty() || trim(row.feature).empty())
      add(report, violation::kEntryFieldEmpty, row_path, "space, breakdown and feature are required");
    if (std::isnan(row.value) && !seg.attribute)
      add(report, violation::kNanNotSemantic, row_path + ".value",
          "NaN only allowed for semantic insights carrying an attribute");
    if (t == InsightType::kRank && row.breakdown_kind != BreakdownKind::kCategorical)
      add(report, violation::kRankBreakdownKind, row_path + ".breakdownKind",
          "rank breakdown must be categorical");
    if (t == InsightType::kTrend && row.breakdown_kind != BreakdownKind::kTemporal)
      add(report, violation::kTrendBreakdownKind, row_path + ".breakdownKind",
          "trend breakdown must be temporal");
  }
  return report;
}

ValidationReport validate(const AugmentedDocument& doc, const std::vector<std::string>* sources) {
  ValidationReport report;
  if (sources && sources->size() != doc.paragraphs.size()) {
    add(report, violation::kContextPartition, "paragraphs",
        "expected " + std::to_string(sources->size()) + " paragraphs, got " +
            std::to_string(doc.paragraphs.size()));
    sources = nullptr;
  }
  for (std::size_t p = 0; p < doc.paragraphs.size(); ++p) {
    const auto& facts = doc.paragraphs[p];
    const std::string ppath = "paragraphs[" + std::to_string(p) + "]";
    for (std::size_t f = 0; f < facts.size(); ++f) {
      auto sub = validate(facts[f], ppath + "[" + std::to_string(f) + "]");
      report.insert(report.end(), sub.begin(), sub.end());
    }
    if (!sources) continue;

    const std::string& source = (*sources)[p];
    std::size_t cursor = 0;
    std::vector<std::string> contexts;
    for (std::size_t f = 0; f < facts.size(); ++f) {
      const std::string& ctx = facts[f].unit_segment.context;
      contexts.push_back(ctx);
      const std::size_t at = source.find(ctx, cursor);
      if (ctx.empty() || at == std::string::npos) {
        add(report, violation::kContextNotInSource, ppath + "[" + std::to_string(f) + "].context",
            "context is not an in-order verbatim slice of the source paragraph");
        continue;
      }
      if (!trim(source.substr(cursor, at - cursor)).empty())
        add(report, violation::kContextPartition, ppath + "[" + std::to_string(f) + "]",
            "non-whitespace text skipped before this context");
      cursor = at + ctx.size();
    }
    if (normalize_whitespace(join(contexts, " ")) != normalize_whitespace(source))
      add(report, violation::kContextPartition, ppath,
          "contexts do not reproduce the source paragraph");
  }
  return report;
}

}  // namespace gistvis
