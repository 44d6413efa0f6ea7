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

// Prompt templates are versioned text files. A template holds a system part
// and a user part separated by a line reading "=== user ===", with
// {placeholder} slots filled at render time.

#ifndef GISTVIS_PROMPTS_H_
#define GISTVIS_PROMPTS_H_

#include <filesystem>
#include <map>
#include <mutex>
#include <string>

#include "gistvis/gateway.h"

namespace gistvis {

class PromptLibrary {
 public:
  explicit PromptLibrary(std::filesystem::path dir);

  // Renders `name` (file stem, e.g. "checker_value") into a request tagged
  // `tag`. Throws std::runtime_error if the file is missing or a slot used by
  // the template has no value.
  PromptRequest render(const std::string& name, const std::string& tag,
                       const std::map<std::string, std::string>& vars) const;

  const std::filesystem::path& dir() const { return dir_; }

  static std::filesystem::path default_dir();

 private:
  struct Template {
    std::string system;
    std::string user;
    std::string hash;
  };
  const Template& load(const std::string& name) const;

  std::filesystem::path dir_;
  mutable std::mutex mu_;
  mutable std::map<std::string, Template> cache_;
};

std::string fill_placeholders(const std::string& text,
                              const std::map<std::string, std::string>& vars);

}  // namespace gistvis

#endif  // GISTVIS_PROMPTS_H_
