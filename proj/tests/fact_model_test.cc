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


#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "gistvis/fact_model.h"
#include "gistvis/interchange.h"
#include "gistvis/pipeline.h"
#include "support.h"

namespace gistvis {
namespace {

using testing::brand_a_fact;
using testing::entry;

bool has_code(const ValidationReport& r, std::string_view code) {
  for (const auto& v : r)
    if (v.code == code) return true;
  return false;
}

DataFact typed(InsightType t, std::vector<DataSpecEntry> rows, std::string context = "Some text.") {
  DataFact f;
  f.unit_segment.insight_type = t;
  f.unit_segment.context = std::move(context);
  f.data_spec = std::move(rows);
  return f;
}

TEST(InsightTypeTest, SevenMembersIncludingNone) {
  EXPECT_EQ(kAllInsightTypes.size(), 7u);
  EXPECT_EQ(to_string(InsightType::kNone), "none");
  for (InsightType t : kAllInsightTypes) EXPECT_EQ(insight_type_from_string(to_string(t)), t);
}

TEST(ValidateTest, PlainTextFactIsValid) {
  DataFact f;
  f.unit_segment.context = "Nothing numeric here.";
  EXPECT_TRUE(validate(f).empty());
}

TEST(ValidateTest, DataSpecForbiddenForNone) {
  DataFact f;
  f.unit_segment.context = "Nothing numeric here.";
  f.data_spec = std::vector<DataSpecEntry>{entry("a", 1)};
  const auto r = validate(f);
  ASSERT_TRUE(has_code(r, violation::kDataSpecForbidden));
  bool message_found = false;
  for (const auto& v : r) message_found |= v.message.find("data_spec forbidden for none") != std::string::npos;
  EXPECT_TRUE(message_found);
}

TEST(ValidateTest, TrendWithMaximumIsAttributeMismatch) {
  DataFact f = typed(InsightType::kTrend, {entry("2020", 1, BreakdownKind::kTemporal)});
  f.unit_segment.attribute = SemanticAttribute::kMaximum;
  EXPECT_TRUE(has_code(validate(f), violation::kAttributeType));
}

TEST(ValidateTest, ExtremeWithIncreasingIsAttributeMismatch) {
  DataFact f = typed(InsightType::kExtreme, {entry("a", 1)});
  f.unit_segment.attribute = SemanticAttribute::kIncreasing;
  EXPECT_TRUE(has_code(validate(f), violation::kAttributeType));
}

TEST(ValidateTest, ContextEmpty) {
  DataFact f = typed(InsightType::kValue, {entry("a", 1)}, "   ");
  EXPECT_TRUE(has_code(validate(f), violation::kContextEmpty));
}

TEST(ValidateTest, PositionOnlyForExtremeAndValue) {
  DataFact f = typed(InsightType::kTrend, {entry("2020", 1, BreakdownKind::kTemporal),
                                           entry("2021", 2, BreakdownKind::kTemporal)});
  f.unit_segment.position = std::vector<std::string>{"phrase"};
  EXPECT_TRUE(has_code(validate(f), violation::kPositionType));
}

TEST(ValidateTest, ExtremePositionNeedsExactlyOne) {
  DataFact f = typed(InsightType::kExtreme, {entry("a", 1)});
  f.unit_segment.attribute = SemanticAttribute::kMaximum;
  f.unit_segment.position = std::vector<std::string>{"one", "two"};
  EXPECT_TRUE(has_code(validate(f), violation::kPositionArity));
  f.unit_segment.position = std::vector<std::string>{"one"};
  EXPECT_TRUE(validate(f).empty());
}

TEST(ValidateTest, ValuePositionNeedsAtLeastOne) {
  DataFact f = typed(InsightType::kValue, {entry("a", 1)});
  f.unit_segment.position = std::vector<std::string>{};
  EXPECT_TRUE(has_code(validate(f), violation::kPositionArity));
  f.unit_segment.position = std::vector<std::string>{"one", "two"};
  EXPECT_TRUE(validate(f).empty());
}

TEST(ValidateTest, EntryFieldsRequired) {
  for (int field = 0; field < 3; ++field) {
    DataSpecEntry e = entry("a", 1);
    if (field == 0) e.space = "";
    if (field == 1) e.breakdown = " ";
    if (field == 2) e.feature = "";
    EXPECT_TRUE(has_code(validate(typed(InsightType::kValue, {e})), violation::kEntryFieldEmpty))
        << "field " << field;
  }
}

TEST(ValidateTest, NanOnlyForSemanticInsight) {
  EXPECT_TRUE(has_code(validate(typed(InsightType::kValue, {entry("a", std::nan(""))})),
                       violation::kNanNotSemantic));
  DataFact trend = typed(InsightType::kTrend, {entry("2023", std::nan(""), BreakdownKind::kTemporal)});
  EXPECT_TRUE(has_code(validate(trend), violation::kNanNotSemantic));
  trend.unit_segment.attribute = SemanticAttribute::kIncreasing;
  EXPECT_TRUE(validate(trend).empty());
}

TEST(ValidateTest, DataSpecMissingForTypedFact) {
  DataFact f;
  f.unit_segment.insight_type = InsightType::kComparison;
  f.unit_segment.context = "A beat B.";
  EXPECT_TRUE(has_code(validate(f), violation::kDataSpecMissing));
}

TEST(ValidateTest, RankBreakdownMustBeCategorical) {
  EXPECT_TRUE(has_code(validate(typed(InsightType::kRank, {entry("2020", 1, BreakdownKind::kTemporal)})),
                       violation::kRankBreakdownKind));
}

TEST(ValidateTest, TrendBreakdownMustBeTemporal) {
  EXPECT_TRUE(has_code(validate(typed(InsightType::kTrend, {entry("a", 1), entry("b", 2)})),
                       violation::kTrendBreakdownKind));
}

TEST(ValidateTest, DegradedFactIsValid) {
  DataFact f = typed(InsightType::kRank, {});
  EXPECT_TRUE(f.degraded());
  EXPECT_TRUE(validate(f).empty());
}

TEST(ValidateDocumentTest, ContextMustComeFromSource) {
  AugmentedDocument doc;
  doc.paragraphs = {{typed(InsightType::kValue, {entry("a", 1)}, "Invented sentence.")}};
  const std::vector<std::string> sources = {"The real sentence."};
  EXPECT_TRUE(has_code(validate(doc, &sources), violation::kContextNotInSource));
}

TEST(ValidateDocumentTest, ContextsMustPartitionParagraph) {
  DataFact a, b;
  a.unit_segment.context = "First one.";
  b.unit_segment.context = "Third one.";
  AugmentedDocument doc;
  doc.paragraphs = {{a, b}};
  const std::vector<std::string> sources = {"First one. Second one. Third one."};
  EXPECT_TRUE(has_code(validate(doc, &sources), violation::kContextPartition));

  DataFact mid;
  mid.unit_segment.context = "Second one.";
  doc.paragraphs = {{a, mid, b}};
  EXPECT_TRUE(validate(doc, &sources).empty());
  // Out of order.
  doc.paragraphs = {{mid, a, b}};
  EXPECT_FALSE(validate(doc, &sources).empty());
}

TEST(ValidateDocumentTest, WhitespaceIsNormalizedForPartition) {
  DataFact a, b;
  a.unit_segment.context = "First\n one.";
  b.unit_segment.context = "Second one.";
  AugmentedDocument doc;
  doc.paragraphs = {{a, b}};
  const std::vector<std::string> sources = {"  First\n one.\n\nSecond one.  "};
  EXPECT_TRUE(validate(doc, &sources).empty());
}

TEST(InterchangeTest, EmptyDocumentRoundTrips) {
  const AugmentedDocument doc;
  const std::string text = to_interchange(doc);
  EXPECT_EQ(from_interchange(text), doc);
  EXPECT_NE(text.find("\"schema_version\": 1"), std::string::npos);
}

TEST(InterchangeTest, BrandAProportionRoundTripsBitIdentically) {
  AugmentedDocument doc;
  doc.paragraphs = {{brand_a_fact()}};
  const std::string text = to_interchange(doc);
  const AugmentedDocument back = from_interchange(text);
  ASSERT_EQ(back, doc);
  EXPECT_EQ(to_interchange(back), text);
  const auto& row = back.paragraphs[0][0].data_spec->at(0);
  EXPECT_EQ(row.space, "car manufacture");
  EXPECT_EQ(row.breakdown, "Brand A");
  EXPECT_EQ(row.feature, "sales percentage");
  EXPECT_EQ(row.value, 0.5);
}

TEST(InterchangeTest, HandBuiltSixTypeDocumentRoundTrips) {
  auto with_attr = [](DataFact f, SemanticAttribute a) {
    f.unit_segment.attribute = a;
    return f;
  };
  DataFact extreme = with_attr(typed(InsightType::kExtreme, {entry("Everest", 8848)},
                                     "The highest mountain is Everest at 8848 meters."),
                               SemanticAttribute::kMaximum);
  extreme.unit_segment.position = std::vector<std::string>{"The highest mountain"};
  DataFact plain;
  plain.unit_segment.context = "Nothing to see.";
  AugmentedDocument doc;
  doc.title = "Six types";
  doc.paragraphs = {
      {typed(InsightType::kValue, {entry("migrants", 1e7)}, "Almost 10 million migrants crossed."),
       with_attr(typed(InsightType::kTrend,
                       {entry("2022", std::nan(""), BreakdownKind::kTemporal)},
                       "Sales kept rising."),
                 SemanticAttribute::kIncreasing)},
      {typed(InsightType::kComparison, {entry("EV", 3932), entry("gas", 11435)},
             "EVs create 3,932 pounds, compared to 11,435 for gas."),
       plain},
      {typed(InsightType::kProportion, {entry("Brand A", 0.5), entry("other", 0.5)},
             "Brand A holds half."),
       extreme,
       typed(InsightType::kRank, {entry("Germany", 1), entry("France", 2)},
             "Germany first, France second.")}};
  attach_visualizations(doc, RenderConfig{});
  const std::string text = to_interchange(doc);
  EXPECT_EQ(from_interchange(text), doc);
  EXPECT_NE(text.find("\"value\": \"NaN\""), std::string::npos);
}

TEST(InterchangeTest, RejectsInvalidDocumentOnWrite) {
  AugmentedDocument doc;
  DataFact bad;
  bad.unit_segment.context = "x";
  bad.data_spec = std::vector<DataSpecEntry>{entry("a", 1)};
  doc.paragraphs = {{bad}};
  EXPECT_THROW(to_interchange(doc), std::invalid_argument);
}

TEST(InterchangeTest, UnknownFieldIsRejectedWithPath) {
  AugmentedDocument doc;
  doc.paragraphs = {{brand_a_fact()}};
  std::string text = to_interchange(doc);
  const std::string key = "\"feature\": \"sales percentage\"";
  text.replace(text.find(key), key.size(), key + ", \"colour\": 1");
  try {
    from_interchange(text);
    FAIL() << "expected an error";
  } catch (const InterchangeError& e) {
    EXPECT_EQ(e.path(), "$.paragraphs[0][0].dataSpec[0].colour");
  }
}

TEST(InterchangeTest, MissingInsightTypeNamesPath) {
  const std::string text =
      R"({"schema_version": 1, "paragraphs": [[{"unitSegmentSpec": {"context": "x"}}]]})";
  try {
    from_interchange(text);
    FAIL() << "expected an error";
  } catch (const InterchangeError& e) {
    EXPECT_EQ(e.path(), "$.paragraphs[0][0].unitSegmentSpec.insightType");
  }
}

TEST(InterchangeTest, RejectsWrongSchemaVersionAndBadJson) {
  EXPECT_THROW(from_interchange(R"({"schema_version": 2, "paragraphs": []})"), InterchangeError);
  EXPECT_THROW(from_interchange(R"({"paragraphs": []})"), InterchangeError);
  EXPECT_THROW(from_interchange("{not json"), InterchangeError);
  EXPECT_THROW(from_interchange(R"({"schema_version": 1, "paragraphs": [[{"unitSegmentSpec":
      {"insightType": "distribution", "context": "x"}}]]})"), InterchangeError);
}

TEST(InterchangeProperty, RoundTripOverGeneratedDocuments) {
  std::mt19937 rng(7);
  for (int i = 0; i < 1000; ++i) {
    auto g = testing::random_document(rng);
    if (i % 2) attach_visualizations(g.doc, RenderConfig{});
    ASSERT_TRUE(validate(g.doc, &g.sources).empty()) << "generator produced an invalid document";
    const std::string text = to_interchange(g.doc);
    ASSERT_EQ(from_interchange(text), g.doc) << "document " << i;
    ASSERT_EQ(to_interchange(from_interchange(text)), text);
  }
}

}  // namespace
}  // namespace gistvis
