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

#include "gistvis/annotator.h"

#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>

#include "gistvis/text_util.h"

namespace gistvis {

namespace {

std::string failure_reason(const GatewayError& e) {
  if (dynamic_cast<const ScriptMissError*>(&e)) return "script_miss";
  if (dynamic_cast<const BackendExhaustedError*>(&e)) return "backend_exhausted";
  if (dynamic_cast<const StructuredOutputError*>(&e)) return "unparseable";
  return "gateway_error";
}

std::string definition_of(const PromptLibrary& prompts, InsightType t) {
  const auto path = prompts.dir() / ("definition_" + std::string(to_string(t)) + ".txt");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("missing type definition: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return std::string(trim(ss.str()));
}

std::string definitions_block(const PromptLibrary& prompts, const std::vector<InsightType>& types) {
  std::string out;
  for (InsightType t : types) {
    if (!out.empty()) out += "\n";
    out += "- " + std::string(to_string(t)) + ": " + definition_of(prompts, t);
  }
  return out;
}

}  // namespace

std::string_view to_string(AnnotationMode m) {
  return m == AnnotationMode::kTwoStep ? "two_step" : "one_step";
}

CheckerVerdict check_type(const std::string& segment, InsightType type, Gateway& gateway,
                          const PromptLibrary& prompts) {
  if (trim(segment).empty()) throw std::invalid_argument("check_type: empty segment");
  if (type == InsightType::kNone) throw std::invalid_argument("check_type: no checker for none");
  const std::string name(to_string(type));
  const PromptRequest req = prompts.render(
      "checker_" + name, "checker." + name,
      {{"segment", segment}, {"definition", definition_of(prompts, type)}});
  CheckerVerdict out;
  out.insight_type = type;
  try {
    out.verdict = gateway.complete_boolean(req);
  } catch (const StructuredOutputError& e) {
    out.verdict = false;
    out.flagged = true;
    out.raw_response = e.what();
    return out;
  }
  const auto calls = gateway.calls();
  for (auto it = calls.rbegin(); it != calls.rend(); ++it) {
    if (it->tag == req.tag) {
      out.raw_response = it->response;
      break;
    }
  }
  return out;
}

ModerationResult moderate(const std::string& segment, const std::vector<InsightType>& candidates,
                          Gateway& gateway, const PromptLibrary& prompts) {
  if (candidates.empty()) throw std::invalid_argument("moderate: no candidates");
  if (candidates.size() == 1) return {candidates.front(), false, {}};

  std::vector<std::string> options;
  for (InsightType t : candidates) options.emplace_back(to_string(t));
  const PromptRequest req = prompts.render(
      "moderator", "moderator",
      {{"segment", segment},
       {"options", join(options, ", ")},
       {"definitions", definitions_block(prompts, candidates)}});
  try {
    const std::string choice = gateway.complete_choice(req, options);
    return {*insight_type_from_string(choice), false, {}};
  } catch (const GatewayError& e) {
    for (InsightType t : kModerationPriority) {
      if (std::find(candidates.begin(), candidates.end(), t) != candidates.end())
        return {t, true, failure_reason(e)};
    }
    return {candidates.front(), true, failure_reason(e)};
  }
}

namespace {

AnnotationResult annotate_one_step(const std::string& segment, Gateway& gateway,
                                   const PromptLibrary& prompts) {
  AnnotationResult result;
  result.mode = AnnotationMode::kOneStep;
  std::vector<std::string> options;
  std::vector<InsightType> data_types(kDataInsightTypes.begin(), kDataInsightTypes.end());
  for (InsightType t : data_types) options.emplace_back(to_string(t));
  options.emplace_back(kNoTypeLabel);
  const PromptRequest req = prompts.render(
      "moderator_onestep", "moderator.onestep",
      {{"segment", segment},
       {"options", join(options, ", ")},
       {"definitions", definitions_block(prompts, data_types)}});
  try {
    const std::string choice = gateway.complete_choice(req, options);
    result.final_type =
        choice == kNoTypeLabel ? InsightType::kNone : *insight_type_from_string(choice);
    if (result.final_type != InsightType::kNone) result.candidates = {result.final_type};
  } catch (const GatewayError& e) {
    result.final_type = InsightType::kNone;
    result.failed = true;
    result.flags.push_back("annotation_failed:" + failure_reason(e));
  }
  return result;
}

}  // namespace

AnnotationResult annotate(const std::string& segment, AnnotationMode mode, Gateway& gateway,
                          const PromptLibrary& prompts, bool concurrent_checkers) {
  if (trim(segment).empty()) throw std::invalid_argument("annotate: empty segment");
  if (mode == AnnotationMode::kOneStep) return annotate_one_step(segment, gateway, prompts);

  AnnotationResult result;
  result.mode = AnnotationMode::kTwoStep;

  struct Outcome {
    std::optional<CheckerVerdict> verdict;
    std::string failure;
  };
  auto run = [&](InsightType t) -> Outcome {
    try {
      return {check_type(segment, t, gateway, prompts), {}};
    } catch (const GatewayError& e) {
      return {std::nullopt, failure_reason(e)};
    }
  };

  std::vector<Outcome> outcomes;
  if (concurrent_checkers) {
    std::vector<std::future<Outcome>> futures;
    for (InsightType t : kDataInsightTypes) futures.push_back(std::async(std::launch::async, run, t));
    for (auto& f : futures) outcomes.push_back(f.get());
  } else {
    for (InsightType t : kDataInsightTypes) outcomes.push_back(run(t));
  }

  std::size_t failures = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const std::string name(to_string(kDataInsightTypes[i]));
    const auto& o = outcomes[i];
    if (!o.verdict) {
      ++failures;
      result.flags.push_back("checker_failed:" + name + ":" + o.failure);
      continue;
    }
    if (o.verdict->flagged) result.flags.push_back("checker_unparseable:" + name);
    if (o.verdict->verdict) result.candidates.push_back(kDataInsightTypes[i]);
  }
  if (failures == outcomes.size()) {
    result.failed = true;
    result.flags.push_back("annotation_failed");
    return result;
  }
  if (result.candidates.empty()) return result;  // text-only segment

  const ModerationResult m = moderate(segment, result.candidates, gateway, prompts);
  result.final_type = m.insight_type;
  if (m.flagged) result.flags.push_back("moderation_fallback:" + m.reason);
  return result;
}

}  // namespace gistvis
