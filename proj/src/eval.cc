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


#include "gistvis/eval.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gistvis/text_util.h"

namespace gistvis {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

void check_partition(const CorpusParagraph& p) {
  const std::string where = p.source;
  if (trim(p.text).empty()) throw CorpusError(where + ": empty paragraph text");
  if (p.segments.empty()) throw CorpusError(where + ": no gold segments");
  std::vector<bool> covered(p.text.size(), false);
  std::size_t prev_end = 0;
  for (std::size_t i = 0; i < p.segments.size(); ++i) {
    const auto& s = p.segments[i];
    if (s.start >= s.end || s.end > p.text.size())
      throw CorpusError(where + ": segment " + std::to_string(i) + " out of range");
    if (s.start < prev_end)
      throw CorpusError(where + ": segment " + std::to_string(i) + " overlaps or is out of order");
    for (std::size_t k = s.start; k < s.end; ++k) covered[k] = true;
    prev_end = s.end;
  }
  for (std::size_t k = 0; k < p.text.size(); ++k) {
    if (!covered[k] && !is_space(p.text[k]))
      throw CorpusError(where + ": byte " + std::to_string(k) + " not covered by any segment");
  }
}

std::string fixed(double v, int digits = 3) {
  if (std::isnan(v)) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

json report_json(const ClassificationReport& r) {
  json labels = json::array();
  for (InsightType t : kAllInsightTypes) labels.push_back(std::string(to_string(t)));
  json per_class = json::object();
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    per_class[std::string(to_string(kAllInsightTypes[c]))] = {{"precision", r.precision[c]},
                                                               {"recall", r.recall[c]},
                                                               {"f1", r.f1[c]},
                                                               {"support", r.support[c]},
                                                               {"predicted", r.predicted[c]}};
  }
  return {{"total", r.total},
          {"accuracy", r.accuracy},
          {"weighted_precision", r.weighted_precision},
          {"weighted_recall", r.weighted_recall},
          {"weighted_f1", r.weighted_f1},
          {"labels", labels},
          {"confusion_matrix", r.matrix},
          {"confusion_matrix_normalized", r.normalized},
          {"per_class", per_class},
          {"flags", r.flags}};
}

}  // namespace

std::vector<SegmentSpan> CorpusParagraph::gold_spans() const {
  std::vector<SegmentSpan> spans;
  for (const auto& s : segments) spans.push_back({s.start, s.end, text.substr(s.start, s.end - s.start)});
  return spans;
}

AnnotatedCorpus parse_corpus(std::string_view json_text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw CorpusError(source + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("paragraphs") || !doc["paragraphs"].is_array())
    throw CorpusError(source + ": expected an object with a \"paragraphs\" array");
  AnnotatedCorpus corpus;
  std::size_t index = 0;
  for (const auto& jp : doc["paragraphs"]) {
    CorpusParagraph p;
    p.source = source + "#" + std::to_string(index++);
    try {
      p.text = jp.at("text").get<std::string>();
      for (const auto& js : jp.at("segments")) {
        GoldSegment g;
        g.start = js.at("start").get<std::size_t>();
        g.end = js.at("end").get<std::size_t>();
        const std::string label = js.at("type").get<std::string>();
        const auto t = label == kNoTypeLabel ? std::optional(InsightType::kNone)
                                             : insight_type_from_string(label);
        if (!t) throw CorpusError(p.source + ": unknown type '" + label + "'");
        g.insight_type = *t;
        p.segments.push_back(g);
      }
    } catch (const json::exception& e) {
      throw CorpusError(p.source + ": " + e.what());
    }
    check_partition(p);
    corpus.paragraphs.push_back(std::move(p));
  }
  return corpus;
}

AnnotatedCorpus load_corpus(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw CorpusError(path.string() + ": no .json corpus files");
  } else {
    files.push_back(path);
  }
  AnnotatedCorpus corpus;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) throw CorpusError("cannot read " + f.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    auto part = parse_corpus(ss.str(), f.filename().string());
    for (auto& p : part.paragraphs) corpus.paragraphs.push_back(std::move(p));
  }
  return corpus;
}

bool same_segmentation(const std::vector<SegmentSpan>& a, const std::vector<SegmentSpan>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (normalize_whitespace(a[i].text) != normalize_whitespace(b[i].text)) return false;
  return true;
}

double segmentation_accuracy(const std::vector<std::vector<SegmentSpan>>& predicted,
                             const std::vector<std::vector<SegmentSpan>>& gold) {
  if (predicted.size() != gold.size())
    throw std::invalid_argument("segmentation_accuracy: " + std::to_string(predicted.size()) +
                                " predicted paragraphs vs " + std::to_string(gold.size()) + " gold");
  if (gold.empty()) return 0.0;
  std::size_t matches = 0;
  for (std::size_t i = 0; i < gold.size(); ++i)
    if (same_segmentation(predicted[i], gold[i])) ++matches;
  return static_cast<double>(matches) / gold.size();
}

std::size_t label_index(InsightType t) {
  for (std::size_t i = 0; i < kNumLabels; ++i)
    if (kAllInsightTypes[i] == t) return i;
  throw std::invalid_argument("unknown insight type");
}

ClassificationReport classification_report(const std::vector<InsightType>& predicted,
                                           const std::vector<InsightType>& gold) {
  if (predicted.size() != gold.size())
    throw std::invalid_argument("classification_report: label lists differ in length");
  if (gold.empty()) throw std::invalid_argument("classification_report: no labels");
  ClassificationReport r;
  r.total = gold.size();
  for (std::size_t i = 0; i < gold.size(); ++i)
    ++r.matrix[label_index(gold[i])][label_index(predicted[i])];

  std::size_t correct = 0;
  for (std::size_t a = 0; a < kNumLabels; ++a) {
    correct += r.matrix[a][a];
    for (std::size_t p = 0; p < kNumLabels; ++p) {
      r.support[a] += r.matrix[a][p];
      r.predicted[p] += r.matrix[a][p];
    }
  }
  r.accuracy = static_cast<double>(correct) / r.total;

  for (std::size_t c = 0; c < kNumLabels; ++c) {
    const double tp = static_cast<double>(r.matrix[c][c]);
    if (r.predicted[c] > 0) {
      r.precision[c] = tp / r.predicted[c];
    } else if (r.support[c] > 0) {
      r.flags.push_back("zero_predicted:" + std::string(to_string(kAllInsightTypes[c])));
    }
    r.recall[c] = r.support[c] > 0 ? tp / r.support[c] : 0.0;
    // Harmonic mean written over counts, which avoids a rounding step.
    const std::size_t denom = r.support[c] + r.predicted[c];
    r.f1[c] = tp > 0 ? 2 * tp / static_cast<double>(denom) : 0.0;
    for (std::size_t p = 0; p < kNumLabels; ++p)
      r.normalized[c][p] = r.support[c] > 0 ? static_cast<double>(r.matrix[c][p]) / r.support[c] : 0.0;

    const double w = static_cast<double>(r.support[c]) / r.total;
    r.weighted_precision += w * r.precision[c];
    r.weighted_recall += w * r.recall[c];
    r.weighted_f1 += w * r.f1[c];
  }
  return r;
}

ClassificationReport classification_report(const std::vector<std::string>& predicted,
                                           const std::vector<std::string>& gold) {
  auto convert = [](const std::vector<std::string>& labels) {
    std::vector<InsightType> out;
    for (const auto& l : labels) {
      if (l == kNoTypeLabel) {
        out.push_back(InsightType::kNone);
        continue;
      }
      const auto t = insight_type_from_string(l);
      if (!t) throw std::invalid_argument("label outside the seven insight types: '" + l + "'");
      out.push_back(*t);
    }
    return out;
  };
  return classification_report(convert(predicted), convert(gold));
}

TimingStats timing_stats(const std::vector<double>& samples_ms) {
  TimingStats t;
  if (samples_ms.empty()) return t;
  double sum = 0;
  for (double s : samples_ms) sum += s;
  t.mean_ms = sum / samples_ms.size();
  if (samples_ms.size() > 1) {
    double sq = 0;
    for (double s : samples_ms) sq += (s - t.mean_ms) * (s - t.mean_ms);
    t.sd_ms = std::sqrt(sq / (samples_ms.size() - 1));
  }
  return t;
}

std::vector<StrategyResult> run_discoverer_eval(const AnnotatedCorpus& corpus,
                                                const std::vector<Segmenter*>& strategies) {
  std::vector<std::vector<SegmentSpan>> gold;
  for (const auto& p : corpus.paragraphs) gold.push_back(p.gold_spans());

  std::vector<StrategyResult> results;
  for (Segmenter* s : strategies) {
    StrategyResult r;
    r.strategy = s->name();
    r.paragraphs = corpus.paragraphs.size();
    std::vector<double> latencies;
    for (std::size_t i = 0; i < corpus.paragraphs.size() && !r.failed; ++i) {
      const auto start = Clock::now();
      Segmentation seg;
      try {
        seg = s->segment(corpus.paragraphs[i].text);
      } catch (const std::exception& e) {
        r.failed = true;
        r.error = corpus.paragraphs[i].source + ": " + e.what();
        break;
      }
      latencies.push_back(elapsed_ms(start));
      if (seg.flagged) {
        ++r.flagged;
        if (seg.reason == "backend_exhausted" || seg.reason == "script_miss" ||
            seg.reason == "gateway_error") {
          r.failed = true;
          r.error = corpus.paragraphs[i].source + ": " + seg.reason;
        }
      }
      if (same_segmentation(seg.spans, gold[i])) ++r.matches;
      r.predictions.push_back(std::move(seg.spans));
    }
    if (!r.failed && r.paragraphs > 0) r.accuracy = static_cast<double>(r.matches) / r.paragraphs;
    if (r.failed) r.accuracy = std::nan("");
    r.timing = timing_stats(latencies);
    results.push_back(std::move(r));
  }
  return results;
}

AnnotatorEvalResult run_annotator_eval(const AnnotatedCorpus& corpus, AnnotationMode mode,
                                       Gateway& gateway, const PromptLibrary& prompts,
                                       bool concurrent_checkers) {
  AnnotatorEvalResult r;
  r.mode = mode;
  const std::size_t calls_before = gateway.call_count();
  std::vector<InsightType> predicted, gold;
  std::vector<double> latencies;
  for (const auto& p : corpus.paragraphs) {
    for (const auto& span : p.gold_spans()) {
      const std::string segment(trim(span.text));
      const auto start = Clock::now();
      const AnnotationResult a = annotate(segment, mode, gateway, prompts, concurrent_checkers);
      latencies.push_back(elapsed_ms(start));
      if (a.failed) ++r.failed_segments;
      for (const auto& flag : a.flags) {
        if (!r.failed && (flag.find("backend_exhausted") != std::string::npos ||
                          flag.find("script_miss") != std::string::npos)) {
          r.failed = true;
          r.error = p.source + ": " + flag;
        }
      }
      predicted.push_back(a.final_type);
    }
    for (const auto& g : p.segments) gold.push_back(g.insight_type);
  }
  r.segments = gold.size();
  if (!gold.empty()) r.report = classification_report(predicted, gold);
  r.timing = timing_stats(latencies);
  r.model_calls = gateway.call_count() - calls_before;
  return r;
}

std::string format_discoverer_report(const std::vector<StrategyResult>& results) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-12s %10s %9s %14s %12s\n", "strategy", "accuracy", "matches",
                "mean_ms", "sd_ms");
  out << line;
  for (const auto& r : results) {
    const std::string matches = std::to_string(r.matches) + "/" + std::to_string(r.paragraphs);
    std::snprintf(line, sizeof line, "%-12s %10s %9s %14s %12s\n", r.strategy.c_str(),
                  r.failed ? "FAILED" : fixed(r.accuracy).c_str(), matches.c_str(),
                  fixed(r.timing.mean_ms, 2).c_str(), fixed(r.timing.sd_ms, 2).c_str());
    out << line;
    if (r.failed) out << "  error: " << r.error << "\n";
  }
  return out.str();
}

std::string discoverer_report_json(const std::vector<StrategyResult>& results) {
  json rows = json::array();
  for (const auto& r : results) {
    json row = {{"strategy", r.strategy},
                {"failed", r.failed},
                {"paragraphs", r.paragraphs},
                {"matches", r.matches},
                {"flagged", r.flagged},
                {"accuracy", r.failed ? json(nullptr) : json(r.accuracy)},
                {"latency_mean_ms", r.timing.mean_ms},
                {"latency_sd_ms", r.timing.sd_ms}};
    if (r.failed) row["error"] = r.error;
    rows.push_back(std::move(row));
  }
  return json{{"evaluation", "discoverer"}, {"strategies", rows}}.dump(2) + "\n";
}

std::string format_annotator_report(const AnnotatorEvalResult& result) {
  const auto& r = result.report;
  std::ostringstream out;
  out << "mode: " << to_string(result.mode) << "\n";
  out << "segments: " << result.segments << "  model calls: " << result.model_calls
      << "  failed annotations: " << result.failed_segments << "\n";
  if (result.failed) out << "FAILED: " << result.error << "\n";
  out << "accuracy " << fixed(r.accuracy) << "  weighted precision " << fixed(r.weighted_precision)
      << "  weighted recall " << fixed(r.weighted_recall) << "  weighted f1 " << fixed(r.weighted_f1)
      << "\n";
  out << "latency mean " << fixed(result.timing.mean_ms, 2) << " ms  sd "
      << fixed(result.timing.sd_ms, 2) << " ms\n\n";

  char cell[64];
  std::snprintf(cell, sizeof cell, "%-12s", "gold\\pred");
  out << cell;
  for (InsightType t : kAllInsightTypes) {
    std::snprintf(cell, sizeof cell, "%11s", std::string(to_string(t)).c_str());
    out << cell;
  }
  out << "\n";
  for (std::size_t a = 0; a < kNumLabels; ++a) {
    std::snprintf(cell, sizeof cell, "%-12s", std::string(to_string(kAllInsightTypes[a])).c_str());
    out << cell;
    for (std::size_t p = 0; p < kNumLabels; ++p) {
      std::snprintf(cell, sizeof cell, "%11s", fixed(r.normalized[a][p], 2).c_str());
      out << cell;
    }
    std::snprintf(cell, sizeof cell, "   (n=%zu)\n", r.support[a]);
    out << cell;
  }
  out << "\n";
  std::snprintf(cell, sizeof cell, "%-12s %9s %9s %9s %8s\n", "class", "precision", "recall", "f1",
                "support");
  out << cell;
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    std::snprintf(cell, sizeof cell, "%-12s %9s %9s %9s %8zu\n",
                  std::string(to_string(kAllInsightTypes[c])).c_str(), fixed(r.precision[c]).c_str(),
                  fixed(r.recall[c]).c_str(), fixed(r.f1[c]).c_str(), r.support[c]);
    out << cell;
  }
  for (const auto& f : r.flags) out << "note: " << f << "\n";
  return out.str();
}

std::string annotator_report_json(const AnnotatorEvalResult& result) {
  json j = {{"evaluation", "annotator"},
            {"mode", std::string(to_string(result.mode))},
            {"failed", result.failed},
            {"segments", result.segments},
            {"failed_annotations", result.failed_segments},
            {"model_calls", result.model_calls},
            {"latency_mean_ms", result.timing.mean_ms},
            {"latency_sd_ms", result.timing.sd_ms},
            {"report", report_json(result.report)}};
  if (result.failed) j["error"] = result.error;
  return j.dump(2) + "\n";
}

}  // namespace gistvis
