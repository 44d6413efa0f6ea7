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


#include "gistvis/pipeline.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "gistvis/discoverer.h"
#include "gistvis/extractor.h"
#include "gistvis/sentence.h"
#include "gistvis/text_util.h"

namespace gistvis {

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string cur;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
      lines.push_back(std::move(cur));
      cur.clear();
    } else if (c == '\n') {
      lines.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(std::move(cur));
  return lines;
}

bool blank(std::string_view line) { return trim(line).empty(); }

bool is_fence(std::string_view line) {
  const std::string_view t = trim(line);
  return t.starts_with("```") || t.starts_with("~~~");
}

// Returns the heading level, or 0.
int heading_level(std::string_view line) {
  std::size_t n = 0;
  while (n < line.size() && line[n] == '#') ++n;
  if (n == 0 || n > 6) return 0;
  if (n < line.size() && line[n] != ' ' && line[n] != '\t') return 0;
  return static_cast<int>(n);
}

bool has_flag_containing(const DataFact& f, std::string_view needle) {
  return std::any_of(f.flags.begin(), f.flags.end(),
                     [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

InputFormat format_for(const std::filesystem::path& path) {
  const std::string ext = to_lower_ascii(path.extension().string());
  return ext == ".md" || ext == ".markdown" ? InputFormat::kMarkdown : InputFormat::kText;
}

IngestedDocument ingest(std::string_view text, InputFormat format) {
  IngestedDocument doc;
  const auto lines = split_lines(text);
  std::vector<std::string> para;
  auto flush = [&] {
    if (!para.empty()) doc.blocks.push_back({join(para, "\n"), true});
    para.clear();
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (blank(line)) {
      flush();
      continue;
    }
    if (format == InputFormat::kMarkdown) {
      if (is_fence(line)) {
        flush();
        std::vector<std::string> code{line};
        const std::string marker(trim(line).substr(0, 3));
        while (++i < lines.size()) {
          code.push_back(lines[i]);
          if (trim(lines[i]).starts_with(marker)) break;
        }
        doc.blocks.push_back({join(code, "\n"), false});
        continue;
      }
      if (const int level = heading_level(line)) {
        flush();
        if (level == 1 && !doc.title) {
          doc.title = std::string(trim(std::string_view(line).substr(1)));
        } else {
          doc.blocks.push_back({std::string(trim(line)), false});
        }
        continue;
      }
    }
    para.push_back(line);
  }
  flush();
  // Blocks hold verbatim text; only surrounding whitespace is dropped.
  for (auto& b : doc.blocks) b.text = std::string(trim(b.text));
  return doc;
}

DataFact process_segment(const std::string& segment, const PipelineConfig& cfg, Gateway& gateway,
                         const PromptLibrary& prompts) {
  AnnotationResult a;
  try {
    a = annotate(segment, cfg.mode, gateway, prompts, cfg.concurrent_checkers);
  } catch (const std::exception&) {
    a = {};
    a.failed = true;
    a.flags.push_back("stage_error:annotator");
  }

  DataFact fact;
  fact.unit_segment.context = segment;
  if (a.failed) {
    // A numeric segment we could not type still gets the question mark.
    fact.flags = a.flags;
    if (contains_digit(segment)) {
      fact.unit_segment.insight_type = InsightType::kValue;
      fact.data_spec.emplace();
      fact.flags.push_back("annotation_degraded");
    }
    return fact;
  }
  if (a.final_type == InsightType::kNone) {
    fact.flags = a.flags;
    return fact;
  }

  try {
    fact = extract(segment, a.final_type, gateway, prompts);
  } catch (const std::exception&) {
    fact = degraded_fact(segment, a.final_type, "stage_error");
  }
  if (const ValidationReport report = validate(fact); !report.empty())
    fact = degraded_fact(segment, a.final_type, "invalid_fact:" + report.front().code);
  fact.flags.insert(fact.flags.begin(), a.flags.begin(), a.flags.end());
  return fact;
}

AugmentResult augment(const IngestedDocument& input, const PipelineConfig& cfg, Gateway& gateway,
                      const PromptLibrary& prompts) {
  if (cfg.concurrency < 1) throw std::invalid_argument("concurrency must be at least 1");
  AugmentResult result;
  result.doc.title = input.title;
  const std::size_t n = input.blocks.size();
  result.doc.paragraphs.resize(n);
  std::vector<bool> fell_back(n, false);

  auto run_block = [&](std::size_t i) {
    const Block& block = input.blocks[i];
    auto& facts = result.doc.paragraphs[i];
    if (!block.augment) {
      DataFact plain;
      plain.unit_segment.context = block.text;
      facts.push_back(std::move(plain));
      return;
    }
    Segmentation seg;
    try {
      seg = segment_llm(block.text, gateway, prompts);
    } catch (const std::exception&) {
      seg.spans = split_sentences(block.text);
      seg.flagged = true;
      seg.reason = "stage_error";
    }
    fell_back[i] = seg.flagged;
    for (const auto& span : seg.spans) {
      DataFact fact = process_segment(span.text, cfg, gateway, prompts);
      if (seg.flagged) fact.flags.insert(fact.flags.begin(), "segmentation_fallback:" + seg.reason);
      facts.push_back(std::move(fact));
    }
  };

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        run_block(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(cfg.concurrency, std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  attach_visualizations(result.doc, cfg.render);

  RunStats& s = result.stats;
  s.paragraphs = n;
  for (std::size_t i = 0; i < n; ++i) {
    result.sources.push_back(input.blocks[i].text);
    if (fell_back[i]) ++s.segmentation_fallbacks;
    for (const auto& f : result.doc.paragraphs[i]) {
      ++s.facts;
      if (f.unit_segment.insight_type != InsightType::kNone) ++s.data_facts;
      if (f.degraded()) ++s.degraded;
      if (has_flag_containing(f, "backend_exhausted")) ++s.backend_exhausted;
      if (has_flag_containing(f, "script_miss")) ++s.script_misses;
      if (has_flag_containing(f, "stage_error")) ++s.stage_errors;
    }
  }
  return result;
}

AugmentResult augment(std::string_view text, InputFormat format, const PipelineConfig& cfg,
                      Gateway& gateway, const PromptLibrary& prompts) {
  return augment(ingest(text, format), cfg, gateway, prompts);
}

void attach_visualizations(AugmentedDocument& doc, const RenderConfig& cfg) {
  std::size_t index = 0;
  for (auto& paragraph : doc.paragraphs) {
    for (auto& fact : paragraph) {
      const std::size_t fact_index = index++;
      if (fact.unit_segment.insight_type == InsightType::kNone) {
        fact.visualization.reset();
        continue;
      }
      fact.visualization = build_visualization(fact, fact_index, cfg);
      for (const auto& flag : compute_entity_spans(fact, cfg).flags) {
        if (std::find(fact.flags.begin(), fact.flags.end(), flag) == fact.flags.end())
          fact.flags.push_back(flag);
      }
    }
  }
}

}  // namespace gistvis
