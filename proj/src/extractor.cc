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

#include "gistvis/extractor.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>

#include "gistvis/number_parser.h"
#include "gistvis/text_util.h"

namespace gistvis {

namespace {

constexpr std::array<std::string_view, 24> kMonthTokens = {
    "january", "february", "march", "april", "may", "june", "july", "august",
    "september", "october", "november", "december", "jan", "feb", "mar", "apr",
    "jun", "jul", "aug", "sep", "sept", "oct", "nov", "dec",
};

constexpr std::array<std::string_view, 14> kTimeWords = {
    "year", "years", "quarter", "quarters", "month", "months", "week", "weeks",
    "decade", "century", "today", "yesterday", "fy", "h1",
};

bool is_year_token(std::string_view tok) {
  // 1000-2199, optionally with a trailing "s" ("1990s") or leading "fy".
  if (tok.size() > 2 && tok.substr(0, 2) == "fy") tok.remove_prefix(2);
  if (!tok.empty() && tok.back() == 's') tok.remove_suffix(1);
  if (tok.size() != 4) return false;
  for (char c : tok)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return tok[0] == '1' || (tok[0] == '2' && tok[1] <= '1');
}

bool is_quarter_token(std::string_view tok) {
  return tok.size() == 2 && tok[0] == 'q' && tok[1] >= '1' && tok[1] <= '4';
}

std::string degrade_reason(const GatewayError& e) {
  if (dynamic_cast<const ScriptMissError*>(&e)) return "script_miss";
  if (dynamic_cast<const BackendExhaustedError*>(&e)) return "backend_exhausted";
  if (dynamic_cast<const StructuredOutputError*>(&e)) return "unparseable";
  return "gateway_error";
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

bool is_temporal_breakdown(std::string_view breakdown) {
  std::string cleaned;
  for (char c : to_lower_ascii(breakdown))
    cleaned.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : ' ');
  std::size_t pos = 0;
  while (pos < cleaned.size()) {
    while (pos < cleaned.size() && cleaned[pos] == ' ') ++pos;
    std::size_t end = cleaned.find(' ', pos);
    if (end == std::string::npos) end = cleaned.size();
    const std::string_view tok = std::string_view(cleaned).substr(pos, end - pos);
    if (!tok.empty()) {
      if (is_year_token(tok) || is_quarter_token(tok)) return true;
      if (std::find(kMonthTokens.begin(), kMonthTokens.end(), tok) != kMonthTokens.end())
        return true;
      if (std::find(kTimeWords.begin(), kTimeWords.end(), tok) != kTimeWords.end()) return true;
    }
    pos = end;
  }
  return false;
}

std::optional<SemanticAttribute> normalize_attribute(std::string_view text, InsightType t) {
  const std::string w = to_lower_ascii(trim(text));
  if (w.empty()) return std::nullopt;
  auto any_of = [&](std::initializer_list<std::string_view> words) {
    for (auto x : words)
      if (w == x) return true;
    return false;
  };
  if (t == InsightType::kTrend) {
    if (any_of({"increasing", "increase", "increased", "up", "rise", "rising", "rose", "grow",
                "growing", "growth", "positive", "upward"}))
      return SemanticAttribute::kIncreasing;
    if (any_of({"decreasing", "decrease", "decreased", "down", "fall", "falling", "fell", "decline",
                "declining", "drop", "dropping", "negative", "downward"}))
      return SemanticAttribute::kDecreasing;
  } else if (t == InsightType::kExtreme) {
    if (any_of({"maximum", "max", "highest", "largest", "most", "top", "biggest", "greatest", "peak"}))
      return SemanticAttribute::kMaximum;
    if (any_of({"minimum", "min", "lowest", "smallest", "least", "fewest", "bottom"}))
      return SemanticAttribute::kMinimum;
  }
  return std::nullopt;
}

DataFact degraded_fact(const std::string& segment, InsightType t, std::string reason) {
  DataFact fact;
  fact.unit_segment.insight_type = t;
  fact.unit_segment.context = segment;
  fact.data_spec = std::vector<DataSpecEntry>{};
  fact.flags.push_back("extraction_degraded:" + reason);
  return fact;
}

DataFact coerce_rows(const ExtractionDraft& draft, InsightType t, const std::string& segment) {
  if (t == InsightType::kNone) throw std::invalid_argument("coerce_rows: type none has no data");
  std::vector<std::string> flags;
  auto drop = [&](std::size_t i, std::string_view why) {
    flags.push_back("row_dropped:" + std::to_string(i) + ":" + std::string(why));
  };

  std::optional<SemanticAttribute> attribute;
  if (t == InsightType::kTrend || t == InsightType::kExtreme) {
    if (draft.attribute_text) {
      attribute = normalize_attribute(*draft.attribute_text, t);
      if (!attribute) flags.push_back("attribute_unrecognized");
    }
  } else if (draft.attribute_text) {
    flags.push_back("attribute_ignored");
  }

  std::vector<DataSpecEntry> rows;
  for (std::size_t i = 0; i < draft.rows.size(); ++i) {
    const auto& r = draft.rows[i];
    DataSpecEntry e;
    e.space = std::string(trim(r.space));
    e.breakdown = std::string(trim(r.breakdown));
    e.feature = std::string(trim(r.feature));
    if (e.space.empty() || e.breakdown.empty() || e.feature.empty()) {
      drop(i, "missing_field");
      continue;
    }
    const std::string kind = to_lower_ascii(trim(r.breakdown_kind));
    if (kind == "temporal" || kind == "t")
      e.breakdown_kind = BreakdownKind::kTemporal;
    else if (kind == "categorical" || kind == "c")
      e.breakdown_kind = BreakdownKind::kCategorical;
    else
      e.breakdown_kind = is_temporal_breakdown(e.breakdown) ? BreakdownKind::kTemporal
                                                           : BreakdownKind::kCategorical;
    if (t == InsightType::kRank && e.breakdown_kind != BreakdownKind::kCategorical) {
      drop(i, "rank_requires_categorical");
      continue;
    }
    if (t == InsightType::kTrend && e.breakdown_kind != BreakdownKind::kTemporal) {
      drop(i, "trend_requires_temporal");
      continue;
    }

    const auto q = parse_quantity(r.value_text);
    if (!q) {
      e.value = nan();
    } else if (t == InsightType::kProportion) {
      e.value = q->percent ? q->fraction : q->magnitude;
      if (!q->percent && e.value > 1.0 && e.value <= 100.0) {
        e.value = q->fraction;
        flags.push_back("proportion_rescaled:" + std::to_string(i));
      }
    } else {
      e.value = q->magnitude;  // non-proportion percentages keep their magnitude
    }

    if (std::isnan(e.value) && !attribute) {
      drop(i, "value_not_numeric");
      continue;
    }
    if (t == InsightType::kProportion && (e.value < 0.0 || e.value > 1.0)) {
      drop(i, "share_out_of_range");
      continue;
    }
    if (t == InsightType::kRank && (std::isnan(e.value) || e.value < 1.0 ||
                                    e.value != std::floor(e.value))) {
      drop(i, "rank_not_positive_integer");
      continue;
    }
    rows.push_back(std::move(e));
  }

  auto numeric_count = [&] {
    return std::count_if(rows.begin(), rows.end(),
                         [](const DataSpecEntry& e) { return !std::isnan(e.value); });
  };

  std::string arity_failure;
  switch (t) {
    case InsightType::kComparison:
      if (numeric_count() < 2) arity_failure = "comparison_needs_two_rows";
      break;
    case InsightType::kTrend: {
      const bool semantic = rows.size() == 1 && std::isnan(rows[0].value) && attribute;
      if (rows.size() < 2 && !semantic) arity_failure = "trend_needs_two_rows";
      if (!attribute && numeric_count() >= 2) {
        // Derive direction from the first and last numeric points.
        const DataSpecEntry* first = nullptr;
        const DataSpecEntry* last = nullptr;
        for (const auto& e : rows) {
          if (std::isnan(e.value)) continue;
          if (!first) first = &e;
          last = &e;
        }
        if (last->value != first->value) {
          attribute = last->value > first->value ? SemanticAttribute::kIncreasing
                                                 : SemanticAttribute::kDecreasing;
          flags.push_back("attribute_derived");
        }
      }
      break;
    }
    case InsightType::kExtreme:
      if (!attribute) arity_failure = "extreme_attribute_missing";
      break;
    default:
      break;
  }
  if (rows.empty() && arity_failure.empty()) arity_failure = "no_rows";

  if (!arity_failure.empty()) {
    DataFact fact = degraded_fact(segment, t, arity_failure);
    fact.flags.insert(fact.flags.begin(), flags.begin(), flags.end());
    return fact;
  }

  if (t == InsightType::kProportion) {
    double sum = 0;
    for (const auto& e : rows) sum += e.value;
    if (sum > 1.0 + kProportionOverflowTolerance) {
      flags.push_back("proportion_overflow");
    } else if (sum < 1.0 - 1e-9) {
      DataSpecEntry other = rows.front();
      other.breakdown = std::string(kComplementBreakdown);
      other.breakdown_kind = BreakdownKind::kCategorical;
      other.value = 1.0 - sum;
      rows.push_back(std::move(other));
    }
  }

  std::optional<std::vector<std::string>> position;
  if (!draft.position_texts.empty()) {
    if (t == InsightType::kExtreme || t == InsightType::kValue) {
      std::vector<std::string> kept;
      for (const auto& p : draft.position_texts) {
        const std::string phrase(trim(p));
        if (!phrase.empty() && segment.find(phrase) != std::string::npos)
          kept.push_back(phrase);
        else
          flags.push_back("position_not_verbatim");
      }
      if (t == InsightType::kExtreme && kept.size() > 1) {
        kept.resize(1);
        flags.push_back("position_truncated");
      }
      if (!kept.empty()) position = std::move(kept);
    } else {
      flags.push_back("position_ignored");
    }
  }

  DataFact fact;
  fact.unit_segment.insight_type = t;
  fact.unit_segment.context = segment;
  fact.unit_segment.attribute = attribute;
  fact.unit_segment.position = std::move(position);
  fact.data_spec = std::move(rows);
  fact.flags = std::move(flags);
  if (auto report = validate(fact); !report.empty()) {
    DataFact bad = degraded_fact(segment, t, "invalid:" + report.front().code);
    bad.flags.insert(bad.flags.begin(), fact.flags.begin(), fact.flags.end());
    return bad;
  }
  return fact;
}

DataFact extract(const std::string& segment, InsightType t, Gateway& gateway,
                 const PromptLibrary& prompts) {
  if (t == InsightType::kNone) throw std::invalid_argument("extract: type none has no data");
  const std::string name(to_string(t));
  const PromptRequest req =
      prompts.render("extractor_" + name, "extractor." + name, {{"segment", segment}});
  try {
    return coerce_rows(gateway.complete_table(req), t, segment);
  } catch (const GatewayError& e) {
    return degraded_fact(segment, t, degrade_reason(e));
  }
}

}  // namespace gistvis
