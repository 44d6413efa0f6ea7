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


#include <algorithm>
#include <random>

#include <gtest/gtest.h>
#include <json.hpp>

#include "gistvis/interchange.h"
#include "gistvis/pipeline.h"
#include "gistvis/text_util.h"
#include "support.h"

namespace gistvis {
namespace {

std::size_t count(std::string_view hay, std::string_view needle) {
  std::size_t n = 0;
  for (auto at = hay.find(needle); at != std::string_view::npos; at = hay.find(needle, at + 1)) ++n;
  return n;
}

bool has_flag_prefix(const DataFact& f, std::string_view prefix) {
  return std::any_of(f.flags.begin(), f.flags.end(),
                     [&](const std::string& s) { return s.rfind(prefix, 0) == 0; });
}

TEST(IngestTest, PlainTextParagraphs) {
  const auto doc = ingest("One.\r\nStill one.\r\n\r\n\r\n  Two.  \n", InputFormat::kText);
  EXPECT_FALSE(doc.title);
  ASSERT_EQ(doc.blocks.size(), 2u);
  EXPECT_EQ(doc.blocks[0].text, "One.\nStill one.");
  EXPECT_EQ(doc.blocks[1].text, "Two.");
  EXPECT_TRUE(ingest(" \n\n ", InputFormat::kText).blocks.empty());
}

TEST(IngestTest, MarkdownTitleHeadingsAndCode) {
  const auto doc = ingest("# Title\n\nText 1.\n\n## Part\n\n```\ncode 12\n\nmore\n```\n\nText 2.",
                          InputFormat::kMarkdown);
  EXPECT_EQ(doc.title, "Title");
  ASSERT_EQ(doc.blocks.size(), 4u);
  EXPECT_TRUE(doc.blocks[0].augment);
  EXPECT_FALSE(doc.blocks[1].augment);
  EXPECT_EQ(doc.blocks[1].text, "## Part");
  EXPECT_FALSE(doc.blocks[2].augment);
  EXPECT_NE(doc.blocks[2].text.find("more"), std::string::npos);
  EXPECT_EQ(format_for("a/b.md"), InputFormat::kMarkdown);
  EXPECT_EQ(format_for("a/b.txt"), InputFormat::kText);
}

class PipelineTest : public ::testing::Test {
 protected:
  std::shared_ptr<ScriptedBackend> backend = std::make_shared<ScriptedBackend>("m");
  Gateway gateway{backend, testing::fast_options()};
  PromptLibrary prompts{PromptLibrary::default_dir()};
  PipelineConfig cfg;
};

TEST_F(PipelineTest, PlainParagraphStaysText) {
  const std::string p = "Reading is pleasant.";
  testing::script_checkers(*backend, p, {});
  const auto r = augment(p, InputFormat::kText, cfg, gateway, prompts);
  ASSERT_EQ(r.doc.paragraphs.size(), 1u);
  ASSERT_EQ(r.doc.paragraphs[0].size(), 1u);
  const DataFact& f = r.doc.paragraphs[0][0];
  EXPECT_EQ(f.unit_segment.insight_type, InsightType::kNone);
  EXPECT_FALSE(f.data_spec);
  EXPECT_FALSE(f.visualization);
  EXPECT_EQ(emit_html(r.doc).find("<svg"), std::string::npos);
  EXPECT_EQ(r.stats.data_facts, 0u);
}

TEST_F(PipelineTest, EmptyDocumentGivesEmptyArtifact) {
  const auto r = augment("\n\n", InputFormat::kText, cfg, gateway, prompts);
  EXPECT_TRUE(r.doc.paragraphs.empty());
  EXPECT_EQ(gateway.call_count(), 0u);
  EXPECT_EQ(from_interchange(to_interchange(r.doc)), r.doc);
}

TEST_F(PipelineTest, UnaugmentedPageEqualsPlainPage) {
  const std::string text = "# Notes\n\nReading is pleasant.\n\nSo is   walking.\n\n```\nx = 3\n```";
  for (const char* s : {"Reading is pleasant.", "So is   walking."}) testing::script_checkers(*backend, s, {});
  const auto r = augment(text, InputFormat::kMarkdown, cfg, gateway, prompts);
  EXPECT_EQ(emit_html(r.doc), emit_plain_html(r.doc.title, r.sources));
}

TEST_F(PipelineTest, ShareSentenceRendersOneStackedBar) {
  const std::string p = "Brand A holds half the market.";
  testing::script_checkers(*backend, p, {InsightType::kProportion});
  backend->add_rule("extractor.proportion", "",
                    {testing::fence_table({{"car manufacture", "Brand A", "categorical", "sales percentage", "0.5"}})});
  const auto r = augment(p, InputFormat::kText, cfg, gateway, prompts);
  const std::string html = emit_html(r.doc);
  EXPECT_EQ(count(html, "<svg"), 1u);
  EXPECT_EQ(count(html, "data-variant=\"proportion.hbar_stacked\""), 1u);
  EXPECT_NE(html.find("The proportion of Brand A is 0.5."), std::string::npos);
  EXPECT_EQ(testing::xml_problem(html), "");
  const DataFact& f = r.doc.paragraphs[0][0];
  EXPECT_EQ((*f.data_spec)[0].value, 0.5);
  EXPECT_EQ((*f.data_spec)[0].breakdown, "Brand A");
}

// Golden fixture.

struct Golden {
  std::string input = testing::read_text(testing::source_path("tests/golden/fixture.md"));
  std::string script = testing::read_text(testing::source_path("tests/golden/fixture.script.json"));
  std::string gist = testing::read_text(testing::source_path("tests/golden/fixture.gist.json"));
  std::string html = testing::read_text(testing::source_path("tests/golden/fixture.html"));
};

std::string lf(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), '\r'), s.end());
  return s;
}

AugmentResult run_golden(const std::string& script, std::size_t concurrency) {
  const Golden g;
  Gateway gateway(ScriptedBackend::from_json(script), testing::fast_options());
  const PromptLibrary prompts(PromptLibrary::default_dir());
  PipelineConfig cfg;
  cfg.concurrency = concurrency;
  return augment(g.input, InputFormat::kMarkdown, cfg, gateway, prompts);
}

TEST(GoldenTest, ByteIdenticalAtAnyConcurrency) {
  const Golden g;
  for (std::size_t c : {1u, 2u, 4u, 8u}) {
    const auto r = run_golden(g.script, c);
    EXPECT_EQ(to_interchange(r.doc), lf(g.gist)) << "concurrency " << c;
    EXPECT_EQ(emit_html(r.doc), lf(g.html)) << "concurrency " << c;
  }
}

TEST(GoldenTest, ArtifactIsValidAndRendersInOrder) {
  const Golden g;
  const auto r = run_golden(g.script, 4);
  EXPECT_TRUE(validate(r.doc, &r.sources).empty());
  EXPECT_EQ(r.doc.title, "Electric vehicles in 2023");
  const std::string html = emit_html(r.doc);
  EXPECT_EQ(testing::xml_problem(html), "");
  const auto comparison = html.find("data-variant=\"comparison.hbar_pair\"");
  const auto proportion = html.find("data-variant=\"proportion.hbar_stacked\"");
  ASSERT_NE(comparison, std::string::npos);
  ASSERT_NE(proportion, std::string::npos);
  EXPECT_LT(comparison, proportion);
  EXPECT_EQ(count(html, "data-variant=\"fallback_icon\""), 1u);
  EXPECT_NE(html.find("The difference between EVs and gas-powered vehicles is 7503."), std::string::npos);
  // Re-rendering from the artifact needs no model.
  AugmentedDocument loaded = from_interchange(to_interchange(r.doc));
  attach_visualizations(loaded, RenderConfig{});
  EXPECT_EQ(emit_html(loaded), html);
}

// Fault injection: one failing stage per run, placed first so it wins.

std::string with_rule(const std::string& script, const std::string& tag, const std::string& contains,
                      const std::string& response) {
  auto j = nlohmann::json::parse(script);
  nlohmann::json rule = nlohmann::json::object();
  rule["tag"] = tag;
  rule["contains"] = contains;
  rule["response"] = response;
  j["responses"].insert(j["responses"].begin(), rule);
  return j.dump();
}

const DataFact* fact_starting(const AugmentedDocument& doc, std::string_view prefix) {
  for (const auto& p : doc.paragraphs)
    for (const auto& f : p)
      if (f.unit_segment.context.rfind(prefix, 0) == 0) return &f;
  return nullptr;
}

void expect_complete(const AugmentResult& r) {
  ASSERT_EQ(r.doc.paragraphs.size(), r.sources.size());
  EXPECT_EQ(r.sources.size(), 6u);
  EXPECT_TRUE(validate(r.doc, &r.sources).empty());
  const std::string html = emit_html(r.doc);
  EXPECT_EQ(testing::xml_problem(html), "");
  EXPECT_EQ(from_interchange(to_interchange(r.doc)), r.doc);
}

TEST(FaultInjectionTest, DiscovererFailureFallsBackToSentences) {
  const Golden g;
  const auto r = run_golden(with_rule(g.script, "discoverer", "EV sales grew", "!transport_failure"), 2);
  expect_complete(r);
  const DataFact* f = fact_starting(r.doc, "EV sales grew");
  ASSERT_NE(f, nullptr);
  EXPECT_TRUE(has_flag_prefix(*f, "segmentation_fallback:backend_exhausted"));
  EXPECT_EQ(r.stats.segmentation_fallbacks, 1u);
}

TEST(FaultInjectionTest, CheckerFailureDegradesToFallback) {
  const Golden g;
  const auto r = run_golden(with_rule(g.script, "checker.*", "highest mountain", "!transport_failure"), 2);
  expect_complete(r);
  const DataFact* f = fact_starting(r.doc, "The highest mountain");
  ASSERT_NE(f, nullptr);
  EXPECT_TRUE(f->degraded());
  ASSERT_TRUE(f->visualization);
  EXPECT_EQ(f->visualization->variant, VariantId::kFallbackIcon);
  EXPECT_TRUE(has_flag_prefix(*f, "annotation_degraded"));
  EXPECT_GE(r.stats.backend_exhausted, 1u);
}

TEST(FaultInjectionTest, ModeratorFailureUsesPriorityType) {
  const Golden g;
  const auto r = run_golden(with_rule(g.script, "moderator", "EVs create", "!transport_failure"), 2);
  expect_complete(r);
  const DataFact* f = fact_starting(r.doc, "EVs create");
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->unit_segment.insight_type, InsightType::kComparison);
  EXPECT_TRUE(has_flag_prefix(*f, "moderation_fallback:backend_exhausted"));
}

TEST(FaultInjectionTest, ExtractorFailureDegradesToFallback) {
  const Golden g;
  for (const std::string response : {"!transport_failure", "no table at all"}) {
    const auto r = run_golden(with_rule(g.script, "extractor.proportion", "", response), 2);
    expect_complete(r);
    const DataFact* f = fact_starting(r.doc, "Brand A holds");
    ASSERT_NE(f, nullptr);
    EXPECT_EQ(f->unit_segment.insight_type, InsightType::kProportion);
    EXPECT_TRUE(f->degraded());
    EXPECT_EQ(f->visualization->variant, VariantId::kFallbackIcon);
    EXPECT_EQ(f->visualization->tooltip_lines,
              std::vector<std::string>{"May contain data insight of proportion."});
    EXPECT_TRUE(has_flag_prefix(*f, "extraction_degraded:"));
    // Other facts are untouched.
    const DataFact* rank = fact_starting(r.doc, "Germany ranked");
    ASSERT_NE(rank, nullptr);
    EXPECT_EQ(rank->visualization->variant, VariantId::kRankVbarOrdered);
  }
}

TEST(FaultInjectionTest, EveryStageFailingStillEmits) {
  const Golden g;
  std::string script = g.script;
  for (const char* tag : {"discoverer", "checker.*", "moderator", "extractor.*"})
    script = with_rule(script, tag, "", "!transport_failure");
  const auto r = run_golden(script, 4);
  expect_complete(r);
  for (const auto& p : r.doc.paragraphs)
    for (const auto& f : p)
      if (f.unit_segment.insight_type != InsightType::kNone) {
        EXPECT_TRUE(f.degraded());
        EXPECT_EQ(f.visualization->variant, VariantId::kFallbackIcon);
      }
}

TEST_F(PipelineTest, MissingTemplateIsStageError) {
  const auto dir = std::filesystem::temp_directory_path() / "gistvis_partial_prompts";
  std::filesystem::remove_all(dir);
  std::filesystem::copy(PromptLibrary::default_dir(), dir);
  std::filesystem::remove(dir / "extractor_value.txt");
  const PromptLibrary partial(dir);
  const std::string p = "The fleet has 12 buses.";
  testing::script_checkers(*backend, p, {InsightType::kValue});
  const auto r = augment(p, InputFormat::kText, cfg, gateway, partial);
  const DataFact& f = r.doc.paragraphs[0][0];
  EXPECT_TRUE(f.degraded());
  EXPECT_TRUE(has_flag_prefix(f, "extraction_degraded:stage_error"));
  EXPECT_EQ(r.stats.stage_errors, 1u);
  std::filesystem::remove_all(dir);
}

TEST_F(PipelineTest, RejectsZeroConcurrency) {
  cfg.concurrency = 0;
  EXPECT_THROW(augment("x", InputFormat::kText, cfg, gateway, prompts), std::invalid_argument);
}

TEST(PipelinePropertyTest, RandomDocumentsPartitionTheirSources) {
  std::mt19937 rng(41);
  const PromptLibrary prompts(PromptLibrary::default_dir());
  for (int i = 0; i < 30; ++i) {
    std::string text;
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int k = 0; k < n; ++k) text += testing::random_paragraph(rng) + "\n\n";
    auto backend = std::make_shared<ScriptedBackend>("m");
    backend->add_rule("discoverer", "", {"!transport_failure"});
    backend->add_rule("checker.value", "", {"yes"});
    backend->add_rule("checker.*", "", {"no"});
    backend->add_rule("extractor.value", "", {testing::fence_table({{"s", "b", "", "f", "3"}})});
    Gateway gateway(backend, testing::fast_options());
    PipelineConfig cfg;
    cfg.concurrency = 3;
    const auto r = augment(text, InputFormat::kText, cfg, gateway, prompts);
    EXPECT_TRUE(validate(r.doc, &r.sources).empty()) << text;
    EXPECT_EQ(testing::xml_problem(emit_html(r.doc)), "");
  }
}

}  // namespace
}  // namespace gistvis
