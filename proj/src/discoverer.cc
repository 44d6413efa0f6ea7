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

#include "gistvis/discoverer.h"

#include <algorithm>
#include <cstdlib>

#include "gistvis/text_util.h"

namespace gistvis {

namespace {

constexpr std::size_t kTopAnchorMin = 8;
constexpr std::size_t kSubAnchorMin = 4;

struct Block {
  std::size_t a = 0;  // offset in candidate
  std::size_t b = 0;  // offset in paragraph
  std::size_t len = 0;
};

// Longest common substring of x[a1,a2) and y[b1,b2); earliest b wins ties.
Block longest_common(std::string_view x, std::size_t a1, std::size_t a2, std::string_view y,
                     std::size_t b1, std::size_t b2) {
  Block best{a1, b1, 0};
  if (a1 >= a2 || b1 >= b2) return best;
  const std::size_t m = b2 - b1;
  std::vector<std::size_t> prev(m + 1, 0), cur(m + 1, 0);
  for (std::size_t i = a1; i < a2; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (x[i] == y[b1 + j]) {
        cur[j + 1] = prev[j] + 1;
        const std::size_t len = cur[j + 1];
        const std::size_t b = b1 + j + 1 - len;
        if (len > best.len || (len == best.len && b < best.b)) best = {i + 1 - len, b, len};
      } else {
        cur[j + 1] = 0;
      }
    }
    std::swap(prev, cur);
  }
  return best;
}

void collect_blocks(std::string_view x, std::size_t a1, std::size_t a2, std::string_view y,
                    std::size_t b1, std::size_t b2, std::vector<Block>& out) {
  const Block blk = longest_common(x, a1, a2, y, b1, b2);
  if (blk.len < kSubAnchorMin) return;
  out.push_back(blk);
  collect_blocks(x, a1, blk.a, y, b1, blk.b, out);
  collect_blocks(x, blk.a + blk.len, a2, y, blk.b + blk.len, b2, out);
}

std::size_t nearest(const std::vector<std::size_t>& sorted, std::size_t v) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
  if (it == sorted.end()) return sorted.back();
  if (it == sorted.begin()) return *it;
  const std::size_t hi = *it;
  const std::size_t lo = *(it - 1);
  return (v - lo <= hi - v) ? lo : hi;
}

}  // namespace

std::vector<SegmentSpan> align_segments(std::string_view paragraph,
                                        const std::vector<std::string>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("align_segments: no candidates");
  const NormalizedText para = normalize_with_offsets(paragraph);
  const std::string_view pn = para.text;
  const std::size_t n = pn.size();
  if (n == 0) return {};

  std::size_t cursor = 0;
  std::size_t matched = 0;
  std::vector<std::size_t> raw_ends;  // normalized offsets, exclusive

  for (const auto& candidate : candidates) {
    const std::string cn = normalize_whitespace(candidate);
    if (cn.empty()) continue;
    const std::size_t top_min = std::min(cn.size(), kTopAnchorMin);

    const Block top = longest_common(cn, 0, cn.size(), pn, cursor, n);
    if (cursor > 0) {
      const Block back = longest_common(cn, 0, cn.size(), pn, 0, cursor);
      if (back.len > top.len && back.len * 2 >= cn.size())
        throw AlignmentError("segment out of order: '" + cn.substr(0, 40) + "'",
                             static_cast<double>(matched) / n);
    }
    if (top.len < top_min) continue;

    // Refine inside a window around the top anchor.
    const std::size_t slack = cn.size() / 4 + 8;
    const std::size_t lo = std::max(cursor, top.b >= top.a + slack ? top.b - top.a - slack : 0);
    const std::size_t hi =
        std::min(n, top.b + top.len + (cn.size() - top.a - top.len) + slack);
    std::vector<Block> blocks{top};
    collect_blocks(cn, 0, top.a, pn, lo, top.b, blocks);
    collect_blocks(cn, top.a + top.len, cn.size(), pn, top.b + top.len, hi, blocks);
    std::sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) { return x.b < y.b; });

    std::size_t covered = 0;
    for (const auto& blk : blocks) covered += blk.len;
    matched += covered;

    const Block& last = blocks.back();
    const std::size_t tail = cn.size() - (last.a + last.len);
    raw_ends.push_back(std::min(n, last.b + last.len + tail));
    cursor = last.b + last.len;
  }

  const double coverage = static_cast<double>(matched) / static_cast<double>(n);
  if (coverage < kMinAlignmentCoverage)
    throw AlignmentError("alignment covers " + std::to_string(coverage) + " of the paragraph",
                         coverage);

  const std::vector<std::size_t> sentence_ends = sentence_end_offsets(paragraph);
  std::vector<std::size_t> cuts;
  // The final candidate's end is the paragraph end regardless of its anchor.
  for (std::size_t i = 0; i + 1 < raw_ends.size(); ++i) {
    const std::size_t e = raw_ends[i];
    const std::size_t orig = e == 0 ? 0 : para.source_offset[e - 1] + 1;
    const std::size_t snapped = nearest(sentence_ends, orig);
    if (snapped < sentence_ends.back() && (cuts.empty() || snapped > cuts.back()))
      cuts.push_back(snapped);
  }
  return spans_from_cuts(paragraph, cuts);
}

std::vector<TaggedSpan> segment_regex_baseline(std::string_view paragraph) {
  std::vector<TaggedSpan> out;
  for (auto& span : split_sentences(paragraph)) {
    const bool digits = contains_digit(span.text);
    out.push_back({std::move(span), digits});
  }
  return out;
}

Segmentation RegexSegmenter::segment(std::string_view paragraph) {
  Segmentation seg;
  for (auto& t : segment_regex_baseline(paragraph)) seg.spans.push_back(std::move(t.span));
  return seg;
}

Segmentation LlmSegmenter::segment(std::string_view paragraph) {
  return segment_llm(paragraph, gateway_, prompts_);
}

Segmentation segment_llm(std::string_view paragraph, Gateway& gateway,
                         const PromptLibrary& prompts) {
  if (trim(paragraph).empty()) throw std::invalid_argument("segment_llm: empty paragraph");
  Segmentation seg;
  std::vector<SegmentSpan> sentences = split_sentences(paragraph);
  if (sentences.size() <= 1) {
    seg.spans = std::move(sentences);
    return seg;
  }
  auto fallback = [&](std::string reason) {
    seg.spans = std::move(sentences);
    seg.flagged = true;
    seg.reason = std::move(reason);
    return seg;
  };
  try {
    const PromptRequest req =
        prompts.render("discoverer", "discoverer", {{"paragraph", std::string(paragraph)}});
    seg.spans = align_segments(paragraph, gateway.complete_segments(req));
    return seg;
  } catch (const AlignmentError&) {
    return fallback("alignment_failed");
  } catch (const ScriptMissError&) {
    return fallback("script_miss");
  } catch (const BackendExhaustedError&) {
    return fallback("backend_exhausted");
  } catch (const StructuredOutputError&) {
    return fallback("unparseable");
  } catch (const GatewayError&) {
    return fallback("gateway_error");
  }
}

}  // namespace gistvis
