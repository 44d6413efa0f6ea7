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

// Data-spec reconstruction for typed unit segments: one prompt per insight
// type, followed by deterministic coercion of the model's draft table.

#ifndef GISTVIS_EXTRACTOR_H_
#define GISTVIS_EXTRACTOR_H_

#include <string>
#include <string_view>

#include "gistvis/fact_model.h"
#include "gistvis/gateway.h"
#include "gistvis/prompts.h"

namespace gistvis {

// Breakdown label appended to close a proportion whose shares sum below 1.
inline constexpr std::string_view kComplementBreakdown = "other";
inline constexpr double kProportionOverflowTolerance = 0.01;

// Year, quarter, month and similar time tokens.
bool is_temporal_breakdown(std::string_view breakdown);

std::optional<SemanticAttribute> normalize_attribute(std::string_view text, InsightType t);

// Applies number parsing, breakdown-kind constraints, per-type arity and
// attribute/position normalization. Never throws on bad drafts: offending
// rows are dropped with a flag and an empty result degrades the fact.
DataFact coerce_rows(const ExtractionDraft& draft, InsightType t, const std::string& segment);

// Runs the type's extraction prompt and coerces the reply. Gateway failures
// degrade the fact (empty data spec plus an "extraction_degraded:*" flag).
DataFact extract(const std::string& segment, InsightType t, Gateway& gateway,
                 const PromptLibrary& prompts);

// Degraded fact: type kept, empty data spec, fallback rendering.
DataFact degraded_fact(const std::string& segment, InsightType t, std::string reason);

}  // namespace gistvis

#endif  // GISTVIS_EXTRACTOR_H_
