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

// Deterministic mapping from data facts to word-scale visualizations:
// variant selection, tooltip text, entity highlight spans and SVG.

#ifndef GISTVIS_VISUALIZER_H_
#define GISTVIS_VISUALIZER_H_

#include <string>
#include <vector>

#include "gistvis/fact_model.h"

namespace gistvis {

struct RenderConfig {
  int glyph_height = 14;  // px; every glyph fits in one text line
  int mark_width = 6;     // px per vertical bar
  int bar_length = 60;    // px for a full-length horizontal bar
  std::vector<std::string> palette = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                      "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
  int max_rank = 10;
  // Route single-row proportion, single-row value and two-row comparison
  // facts to their icon variants instead of bars.
  bool prefer_icons = false;
};

VariantId select_visualization(const DataFact& fact, const RenderConfig& cfg = {});

// Tooltip lines for the fact as it will be rendered. Empty for plain text.
std::vector<std::string> build_tooltip(const DataFact& fact, const RenderConfig& cfg = {});

struct EntitySpans {
  std::vector<HighlightSpan> spans;
  std::vector<std::string> flags;  // "entity_not_found:<breakdown>"
};

// Word-boundary, case-insensitive first occurrence of each breakdown in the
// context. Position phrases replace breakdown spans. Overlaps resolve to the
// longer span, then the earlier one.
EntitySpans compute_entity_spans(const DataFact& fact, const RenderConfig& cfg = {});

// Row holding the extremum of an extreme fact (first row when undecidable).
std::size_t extremal_row(const DataFact& fact);

// Full visualization (marks, tooltip, spans, SVG) for a non-plain fact.
// `fact_index` numbers facts across the document for mark ids.
VisualizationSpec build_visualization(const DataFact& fact, std::size_t fact_index,
                                      const RenderConfig& cfg = {});

std::string render_svg(const VisualizationSpec& spec, const DataFact& fact,
                       const RenderConfig& cfg = {});

}  // namespace gistvis

#endif  // GISTVIS_VISUALIZER_H_
