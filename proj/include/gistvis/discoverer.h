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

// Unit-segment discovery: LLM-driven segmentation re-anchored onto the
// source text, plus the sentence-per-span regex baseline.

#ifndef GISTVIS_DISCOVERER_H_
#define GISTVIS_DISCOVERER_H_

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gistvis/gateway.h"
#include "gistvis/prompts.h"
#include "gistvis/sentence.h"

namespace gistvis {

inline constexpr double kMinAlignmentCoverage = 0.6;

class AlignmentError : public std::runtime_error {
 public:
  AlignmentError(const std::string& what, double coverage)
      : std::runtime_error(what), coverage_(coverage) {}
  double coverage() const { return coverage_; }

 private:
  double coverage_;
};

// Maps model-produced segment texts back onto `paragraph`. Candidates are
// anchored greedily left to right by longest common substrings over
// whitespace-normalized text; each cut snaps to the nearest sentence end.
// Leading unmatched text joins the first span and trailing text the last.
// Throws AlignmentError if anchors cover less than kMinAlignmentCoverage of
// the paragraph or a candidate matches earlier text better than later text.
std::vector<SegmentSpan> align_segments(std::string_view paragraph,
                                        const std::vector<std::string>& candidates);

struct Segmentation {
  std::vector<SegmentSpan> spans;
  bool flagged = false;
  std::string reason;  // why the sentence fallback was used
};

struct TaggedSpan {
  SegmentSpan span;
  bool has_number = false;
};

std::vector<TaggedSpan> segment_regex_baseline(std::string_view paragraph);

// Segmenter plug-in point for evaluation strategies.
class Segmenter {
 public:
  virtual ~Segmenter() = default;
  virtual std::string name() const = 0;
  virtual Segmentation segment(std::string_view paragraph) = 0;
};

class RegexSegmenter : public Segmenter {
 public:
  std::string name() const override { return "regex"; }
  Segmentation segment(std::string_view paragraph) override;
};

class LlmSegmenter : public Segmenter {
 public:
  LlmSegmenter(Gateway& gateway, const PromptLibrary& prompts)
      : gateway_(gateway), prompts_(prompts) {}
  std::string name() const override { return "llm"; }
  Segmentation segment(std::string_view paragraph) override;

 private:
  Gateway& gateway_;
  const PromptLibrary& prompts_;
};

// Single-sentence paragraphs return without a model call. Alignment or
// gateway failures fall back to one span per sentence with `flagged` set and
// `reason` naming the failure.
Segmentation segment_llm(std::string_view paragraph, Gateway& gateway,
                         const PromptLibrary& prompts);

}  // namespace gistvis

#endif  // GISTVIS_DISCOVERER_H_
