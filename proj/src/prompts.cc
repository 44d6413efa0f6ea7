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

#include "gistvis/prompts.h"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gistvis/text_util.h"

namespace gistvis {

namespace {
constexpr std::string_view kUserMarker = "=== user ===";
}

PromptLibrary::PromptLibrary(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path PromptLibrary::default_dir() {
  if (const char* env = std::getenv("GISTVIS_PROMPT_DIR"); env && *env) return env;
  return GISTVIS_DEFAULT_PROMPT_DIR;
}

const PromptLibrary::Template& PromptLibrary::load(const std::string& name) const {
  std::lock_guard lock(mu_);
  if (auto it = cache_.find(name); it != cache_.end()) return it->second;
  const auto path = dir_ / (name + ".txt");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("prompt template not found: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string raw = ss.str();

  Template t;
  t.hash = sha256_hex(raw).substr(0, 16);
  const std::size_t marker = raw.find(kUserMarker);
  if (marker == std::string::npos) {
    t.user = std::string(trim(raw));
  } else {
    t.system = std::string(trim(std::string_view(raw).substr(0, marker)));
    t.user = std::string(trim(std::string_view(raw).substr(marker + kUserMarker.size())));
  }
  return cache_.emplace(name, std::move(t)).first->second;
}

std::string fill_placeholders(const std::string& text,
                              const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '{') {
      std::size_t j = i + 1;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      if (j < text.size() && text[j] == '}' && j > i + 1) {
        const std::string key = text.substr(i + 1, j - i - 1);
        auto it = vars.find(key);
        if (it == vars.end()) throw std::runtime_error("no value for prompt slot {" + key + "}");
        out += it->second;
        i = j;
        continue;
      }
    }
    out.push_back(text[i]);
  }
  return out;
}

PromptRequest PromptLibrary::render(const std::string& name, const std::string& tag,
                                    const std::map<std::string, std::string>& vars) const {
  const Template& t = load(name);
  PromptRequest req;
  req.system_text = fill_placeholders(t.system, vars);
  req.user_text = fill_placeholders(t.user, vars);
  req.tag = tag;
  req.template_hash = t.hash;
  return req;
}

}  // namespace gistvis
