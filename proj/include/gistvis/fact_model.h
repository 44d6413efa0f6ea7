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

// The data-fact schema shared by every pipeline stage: a unit segment's
// spec plus the tabular data reconstructed from it.

#ifndef GISTVIS_FACT_MODEL_H_
#define GISTVIS_FACT_MODEL_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gistvis {

enum class InsightType { kValue, kTrend, kComparison, kProportion, kExtreme, kRank, kNone };

inline constexpr std::array<InsightType, 7> kAllInsightTypes = {
    InsightType::kValue,   InsightType::kTrend, InsightType::kComparison,
    InsightType::kProportion, InsightType::kExtreme, InsightType::kRank,
    InsightType::kNone};

// The six types that carry data; `none` is plain text.
inline constexpr std::array<InsightType, 6> kDataInsightTypes = {
    InsightType::kValue,   InsightType::kTrend, InsightType::kComparison,
    InsightType::kProportion, InsightType::kExtreme, InsightType::kRank};

enum class SemanticAttribute { kIncreasing, kDecreasing, kMaximum, kMinimum };

enum class BreakdownKind { kCategorical, kTemporal };

std::string_view to_string(InsightType t);
std::string_view to_string(SemanticAttribute a);
std::string_view to_string(BreakdownKind k);

// Strict name lookups used by the interchange reader.
std::optional<InsightType> insight_type_from_string(std::string_view s);
std::optional<SemanticAttribute> attribute_from_string(std::string_view s);
std::optional<BreakdownKind> breakdown_kind_from_string(std::string_view s);

struct UnitSegmentSpec {
  InsightType insight_type = InsightType::kNone;
  std::string context;
  std::optional<SemanticAttribute> attribute;
  std::optional<std::vector<std::string>> position;

  bool operator==(const UnitSegmentSpec&) const = default;
};

struct DataSpecEntry {
  std::string space;
  std::string breakdown;
  BreakdownKind breakdown_kind = BreakdownKind::kCategorical;
  std::string feature;
  double value = 0.0;  // NaN marks a purely semantic insight.

  // NaN compares equal to NaN so documents compare structurally.
  bool operator==(const DataSpecEntry& other) const;
};

struct HighlightSpan {
  std::size_t start = 0;  // UTF-8 byte offsets into the segment context.
  std::size_t end = 0;
  int color = 0;
  int row = 0;  // data-spec row the span is bound to

  bool operator==(const HighlightSpan&) const = default;
};

struct Mark {
  std::string id;  // "mark-<factIndex>-<rowIndex>"
  std::string label;
  double value = 0.0;
  int color = 0;
  int row = 0;

  bool operator==(const Mark& other) const;
};

enum class VariantId {
  kProportionHbarStacked,
  kProportionIconUnit,
  kValueBadge,
  kValueIconNumeric,
  kValueHbarSingle,
  kComparisonVbarGroup,
  kComparisonHbarPair,
  kComparisonIconVs,
  kTrendLine,
  kTrendLineArea,
  kTrendIconArrowUp,
  kTrendIconArrowDown,
  kExtremeVbarHighlight,
  kExtremeIconExtremum,
  kRankVbarOrdered,
  kFallbackIcon,
};

std::string_view to_string(VariantId v);
std::optional<VariantId> variant_from_string(std::string_view s);

struct VisualizationSpec {
  VariantId variant = VariantId::kFallbackIcon;
  std::vector<Mark> marks;
  std::vector<std::string> tooltip_lines;
  std::vector<HighlightSpan> highlight_spans;
  std::vector<std::string> palette;  // colors referenced by mark/span indices
  int height = 14;
  int max_width = 0;
  std::string svg;

  bool operator==(const VisualizationSpec&) const = default;
};

struct DataFact {
  UnitSegmentSpec unit_segment;
  // Absent for plain text. Present but empty marks a degraded fact whose
  // extraction failed; it renders as the fallback icon.
  std::optional<std::vector<DataSpecEntry>> data_spec;
  std::optional<VisualizationSpec> visualization;
  std::vector<std::string> flags;

  bool operator==(const DataFact&) const = default;

  bool degraded() const {
    return unit_segment.insight_type != InsightType::kNone && data_spec && data_spec->empty();
  }
};

struct AugmentedDocument {
  std::optional<std::string> title;
  std::vector<std::vector<DataFact>> paragraphs;

  bool operator==(const AugmentedDocument&) const = default;
};

// One violated invariant. `code` is stable and machine-checkable.
struct Violation {
  std::string code;
  std::string path;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

namespace violation {
inline constexpr std::string_view kContextEmpty = "context_empty";
inline constexpr std::string_view kAttributeType = "attribute_type_mismatch";
inline constexpr std::string_view kPositionType = "position_type_mismatch";
inline constexpr std::string_view kPositionArity = "position_arity";
inline constexpr std::string_view kEntryFieldEmpty = "entry_field_empty";
inline constexpr std::string_view kNanNotSemantic = "nan_value_not_semantic";
inline constexpr std::string_view kDataSpecForbidden = "data_spec_forbidden_for_none";
inline constexpr std::string_view kDataSpecMissing = "data_spec_missing";
inline constexpr std::string_view kRankBreakdownKind = "rank_breakdown_not_categorical";
inline constexpr std::string_view kTrendBreakdownKind = "trend_breakdown_not_temporal";
inline constexpr std::string_view kContextNotInSource = "context_not_in_source";
inline constexpr std::string_view kContextPartition = "context_partition";
}  // namespace violation

// Checks every per-fact invariant. Violations are returned, never thrown.
ValidationReport validate(const DataFact& fact, std::string_view path = "fact");

// Validates every fact. When `sources` is given (one entry per paragraph),
// also checks that contexts are in-order verbatim slices partitioning the
// source up to whitespace normalization.
ValidationReport validate(const AugmentedDocument& doc,
                          const std::vector<std::string>* sources = nullptr);

}  // namespace gistvis

#endif  // GISTVIS_FACT_MODEL_H_
