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


#ifndef GISTVIS_PIPELINE_H_
#define GISTVIS_PIPELINE_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gistvis/annotator.h"
#include "gistvis/fact_model.h"
#include "gistvis/gateway.h"
#include "gistvis/prompts.h"
#include "gistvis/visualizer.h"

namespace gistvis {

enum class InputFormat { kText, kMarkdown };

InputFormat format_for(const std::filesystem::path& path);

struct Block {
  std::string text;
  bool augment = true;  // false for headings and code blocks
};

struct IngestedDocument {
  std::optional<std::string> title;
  std::vector<Block> blocks;
};

// Plain text: blank-line separated paragraphs. Markdown: blocks, with fenced
// code and headings kept as plain text. The first "# " heading is the title.
IngestedDocument ingest(std::string_view text, InputFormat format);

struct PipelineConfig {
  AnnotationMode mode = AnnotationMode::kTwoStep;
  std::size_t concurrency = 4;  // paragraphs in flight
  bool concurrent_checkers = true;
  RenderConfig render;
};

struct RunStats {
  std::size_t paragraphs = 0;
  std::size_t facts = 0;
  std::size_t data_facts = 0;
  std::size_t degraded = 0;
  std::size_t segmentation_fallbacks = 0;
  std::size_t backend_exhausted = 0;
  std::size_t script_misses = 0;
  std::size_t stage_errors = 0;  // configuration problems such as a missing template
};

struct AugmentResult {
  AugmentedDocument doc;
  std::vector<std::string> sources;  // one per paragraph, verbatim
  RunStats stats;
};

// Annotate, then extract. Never throws for model failures; the fact carries
// flags instead.
DataFact process_segment(const std::string& segment, const PipelineConfig& cfg, Gateway& gateway,
                         const PromptLibrary& prompts);

AugmentResult augment(const IngestedDocument& input, const PipelineConfig& cfg, Gateway& gateway,
                      const PromptLibrary& prompts);

AugmentResult augment(std::string_view text, InputFormat format, const PipelineConfig& cfg,
                      Gateway& gateway, const PromptLibrary& prompts);

// Recomputes visualizations for every data fact. Fact indices count every
// fact of the document in order, plain text included.
void attach_visualizations(AugmentedDocument& doc, const RenderConfig& cfg);

std::string emit_html(const AugmentedDocument& doc, const RenderConfig& cfg = {});

// The same page with no augmentation at all.
std::string emit_plain_html(const std::optional<std::string>& title,
                            const std::vector<std::string>& paragraphs);

}  // namespace gistvis

#endif  // GISTVIS_PIPELINE_H_
