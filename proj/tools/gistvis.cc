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


// Command-line front end: augment documents, run single stages, re-render
// artifacts and run the evaluation harness.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gistvis/annotator.h"
#include "gistvis/discoverer.h"
#include "gistvis/eval.h"
#include "gistvis/extractor.h"
#include "gistvis/gateway.h"
#include "gistvis/interchange.h"
#include "gistvis/pipeline.h"
#include "gistvis/prompts.h"
#include "gistvis/text_util.h"

namespace fs = std::filesystem;
using namespace gistvis;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitExhausted = 2;

// Raised for bad input files and inconsistent flags; maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BackendFlags {
  std::string backend;
  std::string script;
  std::string endpoint;
  std::string model;
  std::string config;
  std::string cache_dir;
  std::string prompts;
  double rate_limit = 0;
  double rate_burst = 1;
  bool no_cache = false;
};

void add_backend_flags(CLI::App* cmd, BackendFlags& f) {
  cmd->add_option("--backend", f.backend, "live or scripted (default: scripted when --script is given)")
      ->check(CLI::IsMember({"live", "scripted"}));
  cmd->add_option("--script", f.script, "scripted response file");
  cmd->add_option("--endpoint", f.endpoint, "chat-completion URL for the live backend");
  cmd->add_option("--model", f.model, "model id");
  cmd->add_option("--config", f.config, "JSON config with endpoint, model, rate_limit, cache_dir, ...");
  cmd->add_option("--cache-dir", f.cache_dir, "directory for cached responses");
  cmd->add_option("--prompts", f.prompts, "prompt template directory");
  cmd->add_option("--rate-limit", f.rate_limit, "requests per second (0 = unlimited)");
  cmd->add_flag("--no-cache", f.no_cache, "disable response caching");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
  if (!out.flush()) throw ConfigError("write failed: " + path.string());
}

// Flags win over the config file.
void merge_config(BackendFlags& f, std::size_t* concurrency) {
  if (f.config.empty()) return;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(f.config));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(f.config + ": " + e.what());
  }
  auto str = [&](const char* key, std::string& slot) {
    if (slot.empty() && j.contains(key)) slot = j[key].get<std::string>();
  };
  str("backend", f.backend);
  str("endpoint", f.endpoint);
  str("model", f.model);
  str("script", f.script);
  str("cache_dir", f.cache_dir);
  str("prompts", f.prompts);
  if (f.rate_limit == 0 && j.contains("rate_limit")) f.rate_limit = j["rate_limit"].get<double>();
  if (j.contains("rate_burst")) f.rate_burst = j["rate_burst"].get<double>();
  if (concurrency && j.contains("concurrency")) *concurrency = j["concurrency"].get<std::size_t>();
}

std::unique_ptr<Gateway> make_gateway(BackendFlags f) {
  merge_config(f, nullptr);
  std::string kind = f.backend.empty() ? (f.script.empty() ? "live" : "scripted") : f.backend;
  std::shared_ptr<Backend> backend;
  if (kind == "scripted") {
    if (f.script.empty()) throw ConfigError("--backend scripted needs --script");
    try {
      backend = ScriptedBackend::from_file(f.script);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  } else {
    const char* key = std::getenv("GISTVIS_API_KEY");
    if (!key || !*key) throw ConfigError("GISTVIS_API_KEY is not set");
    if (f.endpoint.empty() || f.model.empty())
      throw ConfigError("live backend needs --endpoint and --model");
    backend = std::make_shared<HttpBackend>(f.endpoint, f.model, key);
  }
  GatewayOptions options;
  options.cache_enabled = !f.no_cache;
  if (!f.cache_dir.empty()) options.cache_dir = f.cache_dir;
  options.rate_limit = f.rate_limit;
  options.rate_burst = f.rate_burst;
  return std::make_unique<Gateway>(std::move(backend), options);
}

fs::path prompt_dir(const BackendFlags& f) {
  BackendFlags merged = f;
  merge_config(merged, nullptr);
  return merged.prompts.empty() ? PromptLibrary::default_dir() : fs::path(merged.prompts);
}

int exit_code_for(const RunStats& s) {
  if (s.backend_exhausted > 0) return kExitExhausted;
  if (s.script_misses > 0 || s.stage_errors > 0) return kExitConfig;
  return kExitOk;
}

void print_stats(const RunStats& s) {
  std::cerr << "paragraphs " << s.paragraphs << ", facts " << s.facts << ", data facts "
            << s.data_facts << ", degraded " << s.degraded << ", segmentation fallbacks "
            << s.segmentation_fallbacks << "\n";
  if (s.script_misses) std::cerr << "warning: " << s.script_misses << " facts hit a script miss\n";
  if (s.backend_exhausted)
    std::cerr << "warning: backend exhausted on " << s.backend_exhausted << " facts\n";
  if (s.stage_errors) std::cerr << "warning: " << s.stage_errors << " facts hit a stage error\n";
}

std::string read_segment_arg(const std::string& text, const std::string& file) {
  if (!file.empty()) return std::string(trim(read_file(file)));
  if (text.empty()) throw ConfigError("give the segment text or --file");
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Augment data-rich text with word-scale visualizations."};
  app.require_subcommand(1);

  // augment
  BackendFlags aug_flags;
  std::string aug_in, aug_out = ".";
  bool one_step = false, prefer_icons = false;
  std::size_t concurrency = 4;
  auto* aug = app.add_subcommand("augment", "run the full pipeline on a .txt or .md document");
  aug->add_option("input", aug_in, "document")->required();
  aug->add_option("--out", aug_out, "output directory");
  aug->add_flag("--one-step", one_step, "single multiple-choice annotation instead of checkers");
  aug->add_option("--concurrency", concurrency, "paragraphs processed in parallel")
      ->check(CLI::PositiveNumber);
  aug->add_flag("--prefer-icons", prefer_icons, "use icon variants where available");
  add_backend_flags(aug, aug_flags);

  // segment
  BackendFlags seg_flags;
  std::string seg_in, seg_strategy = "llm";
  auto* seg = app.add_subcommand("segment", "split each paragraph into unit segments");
  seg->add_option("input", seg_in, "document")->required();
  seg->add_option("--strategy", seg_strategy, "llm or regex")->check(CLI::IsMember({"llm", "regex"}));
  add_backend_flags(seg, seg_flags);

  // annotate
  BackendFlags ann_flags;
  std::string ann_text, ann_file;
  bool ann_one_step = false;
  auto* ann = app.add_subcommand("annotate", "label one segment with an insight type");
  ann->add_option("segment", ann_text, "segment text");
  ann->add_option("--file", ann_file, "read the segment from a file");
  ann->add_flag("--one-step", ann_one_step, "single multiple-choice annotation");
  add_backend_flags(ann, ann_flags);

  // extract
  BackendFlags ext_flags;
  std::string ext_text, ext_file, ext_type;
  auto* ext = app.add_subcommand("extract", "extract the data spec of one typed segment");
  ext->add_option("segment", ext_text, "segment text");
  ext->add_option("--file", ext_file, "read the segment from a file");
  ext->add_option("--type", ext_type, "insight type")
      ->required()
      ->check(CLI::IsMember({"value", "trend", "comparison", "proportion", "extreme", "rank"}));
  add_backend_flags(ext, ext_flags);

  // render
  std::string ren_in, ren_out = ".";
  bool ren_icons = false;
  auto* ren = app.add_subcommand("render", "re-emit HTML and SVG from an artifact");
  ren->add_option("artifact", ren_in, ".gist.json file")->required();
  ren->add_option("--out", ren_out, "output directory");
  ren->add_flag("--prefer-icons", ren_icons, "use icon variants where available");

  // eval
  auto* ev = app.add_subcommand("eval", "evaluate the discoverer or annotator on a corpus");
  ev->require_subcommand(1);
  BackendFlags evd_flags;
  std::string evd_corpus, evd_report, evd_strategy = "regex,llm";
  auto* evd = ev->add_subcommand("discoverer", "segmentation accuracy per strategy");
  evd->add_option("--corpus", evd_corpus, "corpus file or directory")->required();
  evd->add_option("--strategy", evd_strategy, "comma-separated subset of regex,llm");
  evd->add_option("--report", evd_report, "write the JSON report here");
  add_backend_flags(evd, evd_flags);

  BackendFlags eva_flags;
  std::string eva_corpus, eva_report, eva_mode = "two_step";
  auto* eva = ev->add_subcommand("annotator", "classification report on gold segments");
  eva->add_option("--corpus", eva_corpus, "corpus file or directory")->required();
  eva->add_option("--mode", eva_mode, "two_step, one_step or both")
      ->check(CLI::IsMember({"two_step", "one_step", "both"}));
  eva->add_option("--report", eva_report, "write the JSON report here");
  add_backend_flags(eva, eva_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (aug->parsed()) {
      merge_config(aug_flags, aug->count("--concurrency") ? nullptr : &concurrency);
      auto gateway = make_gateway(aug_flags);
      const PromptLibrary prompts(prompt_dir(aug_flags));
      PipelineConfig cfg;
      cfg.mode = one_step ? AnnotationMode::kOneStep : AnnotationMode::kTwoStep;
      cfg.concurrency = concurrency;
      cfg.render.prefer_icons = prefer_icons;
      const fs::path in(aug_in);
      const AugmentResult result = augment(read_file(in), format_for(in), cfg, *gateway, prompts);
      const fs::path out_dir(aug_out);
      const std::string stem = in.stem().string();
      write_file(out_dir / (stem + ".gist.json"), to_interchange(result.doc));
      write_file(out_dir / (stem + ".html"), emit_html(result.doc, cfg.render));
      print_stats(result.stats);
      return exit_code_for(result.stats);
    }

    if (seg->parsed()) {
      const std::string text = read_file(seg_in);
      const IngestedDocument doc = ingest(text, format_for(seg_in));
      std::unique_ptr<Gateway> gateway;
      std::unique_ptr<PromptLibrary> prompts;
      std::unique_ptr<Segmenter> segmenter;
      if (seg_strategy == "regex") {
        segmenter = std::make_unique<RegexSegmenter>();
      } else {
        gateway = make_gateway(seg_flags);
        prompts = std::make_unique<PromptLibrary>(prompt_dir(seg_flags));
        segmenter = std::make_unique<LlmSegmenter>(*gateway, *prompts);
      }
      int code = kExitOk;
      for (std::size_t p = 0; p < doc.blocks.size(); ++p) {
        if (!doc.blocks[p].augment) continue;
        const Segmentation s = segmenter->segment(doc.blocks[p].text);
        std::cout << "paragraph " << p;
        if (s.flagged) std::cout << " (fallback: " << s.reason << ")";
        std::cout << "\n";
        for (const auto& span : s.spans)
          std::cout << "  [" << span.start << "," << span.end << ") " << span.text << "\n";
        if (s.reason == "backend_exhausted") code = kExitExhausted;
        else if (s.reason == "script_miss" && code == kExitOk) code = kExitConfig;
      }
      return code;
    }

    if (ann->parsed()) {
      const std::string segment = read_segment_arg(ann_text, ann_file);
      auto gateway = make_gateway(ann_flags);
      const PromptLibrary prompts(prompt_dir(ann_flags));
      const AnnotationResult r = annotate(
          segment, ann_one_step ? AnnotationMode::kOneStep : AnnotationMode::kTwoStep, *gateway, prompts);
      std::cout << to_string(r.final_type) << "\n";
      std::vector<std::string> names;
      for (InsightType t : r.candidates) names.emplace_back(to_string(t));
      std::cerr << "candidates: " << join(names, ", ") << "\n";
      for (const auto& f : r.flags) std::cerr << "flag: " << f << "\n";
      std::cerr << "model calls: " << gateway->call_count() << "\n";
      for (const auto& f : r.flags) {
        if (f.find("backend_exhausted") != std::string::npos) return kExitExhausted;
        if (f.find("script_miss") != std::string::npos) return kExitConfig;
      }
      return kExitOk;
    }

    if (ext->parsed()) {
      const std::string segment = read_segment_arg(ext_text, ext_file);
      auto gateway = make_gateway(ext_flags);
      const PromptLibrary prompts(prompt_dir(ext_flags));
      AugmentedDocument doc;
      doc.paragraphs.push_back({extract(segment, *insight_type_from_string(ext_type), *gateway, prompts)});
      attach_visualizations(doc, RenderConfig{});
      std::cout << to_interchange(doc);
      const auto& flags = doc.paragraphs[0][0].flags;
      for (const auto& f : flags) {
        if (f.find("backend_exhausted") != std::string::npos) return kExitExhausted;
        if (f.find("script_miss") != std::string::npos) return kExitConfig;
      }
      return kExitOk;
    }

    if (ren->parsed()) {
      const fs::path in(ren_in);
      AugmentedDocument doc = from_interchange(read_file(in));
      RenderConfig cfg;
      cfg.prefer_icons = ren_icons;
      attach_visualizations(doc, cfg);
      std::string stem = in.filename().string();
      if (const auto pos = stem.find(".gist.json"); pos != std::string::npos) stem.resize(pos);
      else stem = in.stem().string();
      write_file(fs::path(ren_out) / (stem + ".html"), emit_html(doc, cfg));
      return kExitOk;
    }

    if (evd->parsed()) {
      const AnnotatedCorpus corpus = load_corpus(evd_corpus);
      std::vector<std::unique_ptr<Segmenter>> owned;
      std::unique_ptr<Gateway> gateway;
      std::unique_ptr<PromptLibrary> prompts;
      std::stringstream names(evd_strategy);
      for (std::string name; std::getline(names, name, ',');) {
        name = std::string(trim(name));
        if (name == "regex") {
          owned.push_back(std::make_unique<RegexSegmenter>());
        } else if (name == "llm") {
          gateway = make_gateway(evd_flags);
          prompts = std::make_unique<PromptLibrary>(prompt_dir(evd_flags));
          owned.push_back(std::make_unique<LlmSegmenter>(*gateway, *prompts));
        } else {
          throw ConfigError("unknown strategy '" + name + "'");
        }
      }
      std::vector<Segmenter*> strategies;
      for (auto& s : owned) strategies.push_back(s.get());
      const auto results = run_discoverer_eval(corpus, strategies);
      std::cout << format_discoverer_report(results);
      if (!evd_report.empty()) write_file(evd_report, discoverer_report_json(results));
      for (const auto& r : results)
        if (r.failed) return kExitExhausted;
      return kExitOk;
    }

    if (eva->parsed()) {
      const AnnotatedCorpus corpus = load_corpus(eva_corpus);
      auto gateway = make_gateway(eva_flags);
      const PromptLibrary prompts(prompt_dir(eva_flags));
      std::vector<AnnotationMode> modes;
      if (eva_mode != "one_step") modes.push_back(AnnotationMode::kTwoStep);
      if (eva_mode != "two_step") modes.push_back(AnnotationMode::kOneStep);
      nlohmann::ordered_json reports = nlohmann::ordered_json::array();
      int code = kExitOk;
      for (AnnotationMode m : modes) {
        const AnnotatorEvalResult r = run_annotator_eval(corpus, m, *gateway, prompts);
        std::cout << format_annotator_report(r) << "\n";
        reports.push_back(nlohmann::ordered_json::parse(annotator_report_json(r)));
        if (r.failed) code = kExitExhausted;
      }
      if (!eva_report.empty())
        write_file(eva_report, (reports.size() == 1 ? reports[0] : reports).dump(2) + "\n");
      return code;
    }
  } catch (const ConfigError& e) {
    std::cerr << "gistvis: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InterchangeError& e) {
    std::cerr << "gistvis: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CorpusError& e) {
    std::cerr << "gistvis: " << e.what() << "\n";
    return kExitConfig;
  } catch (const BackendExhaustedError& e) {
    std::cerr << "gistvis: " << e.what() << "\n";
    return kExitExhausted;
  } catch (const std::exception& e) {
    std::cerr << "gistvis: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
