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


#ifndef GISTVIS_EVAL_H_
#define GISTVIS_EVAL_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gistvis/annotator.h"
#include "gistvis/discoverer.h"
#include "gistvis/fact_model.h"

namespace gistvis {

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GoldSegment {
  std::size_t start = 0;
  std::size_t end = 0;
  InsightType insight_type = InsightType::kNone;
};

struct CorpusParagraph {
  std::string source;  // file name and index, for error messages
  std::string text;
  std::vector<GoldSegment> segments;

  std::vector<SegmentSpan> gold_spans() const;
};

struct AnnotatedCorpus {
  std::vector<CorpusParagraph> paragraphs;
};

// {"paragraphs": [{"text": ..., "segments": [{"start", "end", "type"}]}]}
// Offsets are UTF-8 bytes into text. Gold spans must satisfy the partition
// property or CorpusError is thrown.
AnnotatedCorpus parse_corpus(std::string_view json_text, const std::string& source = "corpus");
// A single file, or every *.json file of a directory in name order.
AnnotatedCorpus load_corpus(const std::filesystem::path& path);

// Exact match of the whole boundary set per paragraph, compared after
// whitespace normalization.
bool same_segmentation(const std::vector<SegmentSpan>& a, const std::vector<SegmentSpan>& b);
double segmentation_accuracy(const std::vector<std::vector<SegmentSpan>>& predicted,
                             const std::vector<std::vector<SegmentSpan>>& gold);

inline constexpr std::size_t kNumLabels = kAllInsightTypes.size();
std::size_t label_index(InsightType t);

struct ClassificationReport {
  std::size_t total = 0;
  double accuracy = 0;
  double weighted_precision = 0;
  double weighted_recall = 0;
  double weighted_f1 = 0;
  // Rows are gold labels, columns predictions, both in kAllInsightTypes order.
  std::array<std::array<std::size_t, kNumLabels>, kNumLabels> matrix{};
  std::array<std::array<double, kNumLabels>, kNumLabels> normalized{};
  std::array<std::size_t, kNumLabels> support{};
  std::array<std::size_t, kNumLabels> predicted{};
  std::array<double, kNumLabels> precision{};
  std::array<double, kNumLabels> recall{};
  std::array<double, kNumLabels> f1{};
  std::vector<std::string> flags;  // "zero_predicted:<label>"
};

ClassificationReport classification_report(const std::vector<InsightType>& predicted,
                                           const std::vector<InsightType>& gold);
// Labels by name; throws std::invalid_argument for anything outside the seven.
ClassificationReport classification_report(const std::vector<std::string>& predicted,
                                           const std::vector<std::string>& gold);

struct TimingStats {
  double mean_ms = 0;
  double sd_ms = 0;  // sample standard deviation
};
TimingStats timing_stats(const std::vector<double>& samples_ms);

struct StrategyResult {
  std::string strategy;
  bool failed = false;
  std::string error;
  std::size_t paragraphs = 0;
  std::size_t matches = 0;
  std::size_t flagged = 0;
  double accuracy = 0;
  TimingStats timing;
  std::vector<std::vector<SegmentSpan>> predictions;
};

std::vector<StrategyResult> run_discoverer_eval(const AnnotatedCorpus& corpus,
                                                const std::vector<Segmenter*>& strategies);

struct AnnotatorEvalResult {
  AnnotationMode mode = AnnotationMode::kTwoStep;
  bool failed = false;
  std::string error;
  std::size_t segments = 0;
  std::size_t failed_segments = 0;
  ClassificationReport report;
  TimingStats timing;
  std::size_t model_calls = 0;
};

// Feeds gold segments straight to the annotator.
AnnotatorEvalResult run_annotator_eval(const AnnotatedCorpus& corpus, AnnotationMode mode,
                                       Gateway& gateway, const PromptLibrary& prompts,
                                       bool concurrent_checkers = true);

std::string format_discoverer_report(const std::vector<StrategyResult>& results);
std::string discoverer_report_json(const std::vector<StrategyResult>& results);
std::string format_annotator_report(const AnnotatorEvalResult& result);
std::string annotator_report_json(const AnnotatorEvalResult& result);

}  // namespace gistvis

#endif  // GISTVIS_EVAL_H_
