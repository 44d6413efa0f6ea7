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


// Shared fixtures, generators and scripted-backend helpers for the tests and
// the acceptance runner.

#ifndef GISTVIS_TESTS_SUPPORT_H_
#define GISTVIS_TESTS_SUPPORT_H_

#include <filesystem>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gistvis/fact_model.h"
#include "gistvis/gateway.h"

namespace gistvis::testing {

std::filesystem::path source_path(const std::string& relative);
std::string read_text(const std::filesystem::path& path);

// Gateway options with no real sleeping between retries.
GatewayOptions fast_options();

// A fenced extraction table in the format the extractor prompts ask for.
std::string fence_table(const std::vector<std::vector<std::string>>& rows,
                        const std::string& trailer = "");

// Scripts every checker for `segment`: types in `yes` answer yes, others no.
void script_checkers(ScriptedBackend& backend, const std::string& segment,
                     const std::set<InsightType>& yes);

DataSpecEntry entry(std::string breakdown, double value,
                    BreakdownKind kind = BreakdownKind::kCategorical,
                    std::string space = "space", std::string feature = "feature");

// Generators. Every generated fact validates; documents come with their
// source paragraphs.
std::string random_sentence(std::mt19937& rng, bool terminate = true);
std::string random_paragraph(std::mt19937& rng);
DataFact random_fact(std::mt19937& rng, std::string context, bool allow_degraded = true);

struct GeneratedDocument {
  AugmentedDocument doc;
  std::vector<std::string> sources;
};
GeneratedDocument random_document(std::mt19937& rng);

// Minimal XML well-formedness check: balanced tags, quoted attributes,
// known entity references. Doctype and comments are skipped. Returns an
// error description, empty when well formed.
std::string xml_problem(std::string_view xml);

// Attribute value of every element named `tag`, in document order.
std::vector<std::string> attribute_values(std::string_view xml, std::string_view tag,
                                          std::string_view attribute);

// The car-market proportion fact with Brand A at 0.5.
DataFact brand_a_fact();

}  // namespace gistvis::testing

#endif  // GISTVIS_TESTS_SUPPORT_H_
