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

// Insight-type annotation: six parallel true/false type checkers, then a
// multiple-choice moderator over the positive candidates. The one-step mode
// asks a single multiple-choice question over all seven labels.

#ifndef GISTVIS_ANNOTATOR_H_
#define GISTVIS_ANNOTATOR_H_

#include <string>
#include <vector>

#include "gistvis/fact_model.h"
#include "gistvis/gateway.h"
#include "gistvis/prompts.h"

namespace gistvis {

enum class AnnotationMode { kTwoStep, kOneStep };

std::string_view to_string(AnnotationMode m);

struct CheckerVerdict {
  InsightType insight_type = InsightType::kValue;
  bool verdict = false;
  std::string raw_response;
  bool flagged = false;  // reply was unparseable; verdict defaulted to false
};

struct ModerationResult {
  InsightType insight_type = InsightType::kNone;
  bool flagged = false;
  std::string reason;
};

struct AnnotationResult {
  InsightType final_type = InsightType::kNone;
  std::vector<InsightType> candidates;
  AnnotationMode mode = AnnotationMode::kTwoStep;
  std::vector<std::string> flags;
  bool failed = false;  // no usable model answer at all
};

// Moderation fallback order, most visually specific first.
inline constexpr std::array<InsightType, 6> kModerationPriority = {
    InsightType::kProportion, InsightType::kTrend,   InsightType::kComparison,
    InsightType::kRank,       InsightType::kExtreme, InsightType::kValue};

CheckerVerdict check_type(const std::string& segment, InsightType type, Gateway& gateway,
                          const PromptLibrary& prompts);

ModerationResult moderate(const std::string& segment, const std::vector<InsightType>& candidates,
                          Gateway& gateway, const PromptLibrary& prompts);

AnnotationResult annotate(const std::string& segment, AnnotationMode mode, Gateway& gateway,
                          const PromptLibrary& prompts, bool concurrent_checkers = true);

// Label used in the one-step option list for `none`.
inline constexpr std::string_view kNoTypeLabel = "no type";

}  // namespace gistvis

#endif  // GISTVIS_ANNOTATOR_H_
