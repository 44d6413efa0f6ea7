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

// Canonical `.gist.json` interchange format for augmented documents.

#ifndef GISTVIS_INTERCHANGE_H_
#define GISTVIS_INTERCHANGE_H_

#include <stdexcept>
#include <string>
#include <string_view>

#include "gistvis/fact_model.h"

namespace gistvis {

inline constexpr int kSchemaVersion = 1;

// Malformed artifact. `path()` is a JSON path such as
// "$.paragraphs[0][2].unitSegmentSpec.insightType".
class InterchangeError : public std::runtime_error {
 public:
  InterchangeError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Serializes a valid document; throws std::invalid_argument otherwise.
// Output is deterministic: fixed key order, two-space indent, trailing newline.
std::string to_interchange(const AugmentedDocument& doc);

// Parses and strictly checks an artifact. Unknown fields are rejected.
AugmentedDocument from_interchange(std::string_view text);

}  // namespace gistvis

#endif  // GISTVIS_INTERCHANGE_H_
