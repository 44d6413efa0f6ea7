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

#include "gistvis/gateway.h"

#include <cctype>
#include <fstream>
#include <sstream>
#include <thread>

#include "gistvis/text_util.h"
#include "json.hpp"

namespace gistvis {

using Json = nlohmann::ordered_json;

std::string fingerprint(const PromptRequest& req, std::string_view model_id) {
  Json canonical = Json::array({req.system_text, req.user_text, req.decoding.temperature,
                                req.decoding.max_output_tokens, std::string(model_id),
                                req.template_hash});
  return sha256_hex(canonical.dump());
}

// ---------------------------------------------------------------------------
// Scripted backend

ScriptedBackend::ScriptedBackend(std::string model_id) : model_id_(std::move(model_id)) {}

std::string ScriptedBackend::Script::play() {
  if (outcomes.empty()) return {};
  const std::string& out = outcomes[std::min(next, outcomes.size() - 1)];
  if (next < outcomes.size()) ++next;
  return out;
}

void ScriptedBackend::add(const std::string& fp, std::string response) {
  add_sequence(fp, {std::move(response)});
}

void ScriptedBackend::add_sequence(const std::string& fp, std::vector<std::string> outcomes) {
  std::lock_guard lock(mu_);
  by_fingerprint_[fp] = Script{std::move(outcomes), 0};
}

void ScriptedBackend::add_rule(std::string tag_pattern, std::string contains,
                               std::vector<std::string> outcomes) {
  std::lock_guard lock(mu_);
  rules_.push_back({std::move(tag_pattern), std::move(contains), Script{std::move(outcomes), 0}});
}

namespace {

bool tag_matches(std::string_view pattern, std::string_view tag) {
  if (!pattern.empty() && pattern.back() == '*') {
    pattern.remove_suffix(1);
    return tag.substr(0, pattern.size()) == pattern;
  }
  return pattern == tag;
}

}  // namespace

std::string ScriptedBackend::send(const PromptRequest& req) {
  const std::string fp = fingerprint(req, model_id_);
  std::string outcome;
  {
    std::lock_guard lock(mu_);
    if (auto it = by_fingerprint_.find(fp); it != by_fingerprint_.end()) {
      outcome = it->second.play();
    } else {
      bool found = false;
      for (auto& rule : rules_) {
        if (tag_matches(rule.tag_pattern, req.tag) &&
            req.user_text.find(rule.contains) != std::string::npos) {
          outcome = rule.script.play();
          found = true;
          break;
        }
      }
      if (!found) throw ScriptMissError(req.tag, "no scripted response for fingerprint " + fp);
    }
  }
  if (outcome == kTransportFailure) throw TransportError("scripted transport failure");
  return outcome;
}

std::unique_ptr<ScriptedBackend> ScriptedBackend::from_json(std::string_view text) {
  Json root = Json::parse(text);
  if (!root.is_object()) throw std::invalid_argument("script: expected object");
  for (const auto& [key, _] : root.items())
    if (key != "model" && key != "responses")
      throw std::invalid_argument("script: unknown field '" + key + "'");
  auto backend = std::make_unique<ScriptedBackend>(root.value("model", std::string("scripted")));
  const Json& responses = root.at("responses");
  if (!responses.is_array()) throw std::invalid_argument("script: responses must be an array");
  for (std::size_t i = 0; i < responses.size(); ++i) {
    const Json& e = responses[i];
    const std::string where = "script: responses[" + std::to_string(i) + "]";
    if (!e.is_object()) throw std::invalid_argument(where + " must be an object");
    for (const auto& [key, _] : e.items())
      if (key != "fingerprint" && key != "tag" && key != "contains" && key != "response" &&
          key != "sequence" && key != "note")
        throw std::invalid_argument(where + ": unknown field '" + key + "'");
    std::vector<std::string> outcomes;
    if (e.contains("response"))
      outcomes.push_back(e.at("response").get<std::string>());
    else if (e.contains("sequence"))
      outcomes = e.at("sequence").get<std::vector<std::string>>();
    else
      throw std::invalid_argument(where + " needs 'response' or 'sequence'");
    if (e.contains("fingerprint")) {
      backend->add_sequence(e.at("fingerprint").get<std::string>(), std::move(outcomes));
    } else if (e.contains("tag")) {
      backend->add_rule(e.at("tag").get<std::string>(), e.value("contains", std::string()),
                        std::move(outcomes));
    } else {
      throw std::invalid_argument(where + " needs 'fingerprint' or 'tag'");
    }
  }
  return backend;
}

std::unique_ptr<ScriptedBackend> ScriptedBackend::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open script " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

// ---------------------------------------------------------------------------
// Rate limiter

RateLimiter::RateLimiter(double requests_per_second, double burst)
    : rate_(requests_per_second),
      capacity_(std::max(1.0, burst)),
      tokens_(std::max(1.0, burst)),
      last_(Clock::now()) {}

void RateLimiter::acquire() {
  if (rate_ <= 0.0) return;
  std::unique_lock lock(mu_);
  for (;;) {
    const auto now = Clock::now();
    const double elapsed = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    tokens_ = std::min(capacity_, tokens_ + elapsed * rate_);
    if (tokens_ >= 1.0) {
      tokens_ -= 1.0;
      return;
    }
    const double wait_s = (1.0 - tokens_) / rate_;
    // Holding the lock while waiting serializes acquisition.
    std::this_thread::sleep_for(std::chrono::duration<double>(wait_s));
  }
}

// ---------------------------------------------------------------------------
// Shape parsers

namespace {

std::string strip_decorations(std::string_view text) {
  std::string s = to_lower_ascii(trim(text));
  auto strip_prefix = [&](std::string_view p) {
    if (s.rfind(p, 0) == 0) s = std::string(trim(std::string_view(s).substr(p.size())));
  };
  strip_prefix("answer:");
  strip_prefix("final answer:");
  strip_prefix("label:");
  const std::string_view junk = " \t\r\n.,;:!?\"'`*()[]{}";
  std::size_t b = s.find_first_not_of(junk);
  std::size_t e = s.find_last_not_of(junk);
  if (b == std::string::npos) return {};
  return s.substr(b, e - b + 1);
}

std::string option_key(std::string_view s) {
  std::string out = to_lower_ascii(trim(s));
  for (char& c : out)
    if (c == '_' || c == '-') c = ' ';
  return normalize_whitespace(out);
}

std::string strip_code_fence(std::string_view text) {
  std::string_view t = trim(text);
  if (t.substr(0, 3) == "```") {
    const std::size_t nl = t.find('\n');
    const std::size_t close = t.rfind("```");
    if (nl != std::string_view::npos && close > nl) return std::string(t.substr(nl + 1, close - nl - 1));
  }
  return std::string(t);
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  lines.push_back(cur);
  return lines;
}

std::vector<std::string> split_cells(std::string_view line) {
  std::vector<std::string> cells;
  std::string_view t = trim(line);
  if (!t.empty() && t.front() == '|') t.remove_prefix(1);
  if (!t.empty() && t.back() == '|') t.remove_suffix(1);
  std::size_t start = 0;
  for (;;) {
    const std::size_t bar = t.find('|', start);
    cells.emplace_back(trim(t.substr(start, bar == std::string_view::npos ? bar : bar - start)));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return cells;
}

bool is_separator_row(const std::vector<std::string>& cells) {
  for (const auto& c : cells)
    if (c.find_first_not_of("-: ") != std::string::npos) return false;
  return true;
}

// Handles "attribute: x" / "position: y" lines; returns true if consumed.
bool take_field_line(std::string_view line, ExtractionDraft& draft) {
  const std::string_view t = trim(line);
  const std::string lower = to_lower_ascii(t);
  auto value_after = [&](std::string_view key) -> std::optional<std::string> {
    if (lower.rfind(key, 0) != 0) return std::nullopt;
    return std::string(trim(t.substr(key.size())));
  };
  if (auto v = value_after("attribute:")) {
    if (!v->empty() && to_lower_ascii(*v) != "none") draft.attribute_text = *v;
    return true;
  }
  if (auto v = value_after("position:")) {
    std::string p = *v;
    if (p.size() >= 2 && p.front() == '"' && p.back() == '"') p = p.substr(1, p.size() - 2);
    if (!p.empty() && to_lower_ascii(p) != "none") draft.position_texts.push_back(p);
    return true;
  }
  return false;
}

}  // namespace

std::optional<bool> parse_boolean_verdict(std::string_view text) {
  const std::string s = strip_decorations(text);
  std::size_t end = 0;
  while (end < s.size() && std::isalpha(static_cast<unsigned char>(s[end]))) ++end;
  const std::string word = s.substr(0, end);
  if (word == "true" || word == "yes") return true;
  if (word == "false" || word == "no") return false;
  return std::nullopt;
}

std::optional<std::string> parse_single_choice(std::string_view text,
                                               const std::vector<std::string>& options) {
  const std::string answer = option_key(strip_decorations(text));
  for (const auto& opt : options)
    if (answer == option_key(opt)) return opt;
  std::optional<std::string> hit;
  for (const auto& opt : options) {
    if (find_word_ci(answer, option_key(opt))) {
      if (hit) return std::nullopt;  // ambiguous
      hit = opt;
    }
  }
  return hit;
}

std::optional<std::vector<std::string>> parse_segment_list(std::string_view text) {
  const std::string body = strip_code_fence(text);
  const std::string_view t = trim(body);
  std::vector<std::string> out;
  if (!t.empty() && t.front() == '[') {
    try {
      Json arr = Json::parse(t);
      if (arr.is_array()) {
        for (const auto& e : arr) {
          if (!e.is_string()) return std::nullopt;
          const std::string s(trim(e.get<std::string>()));
          if (!s.empty()) out.push_back(s);
        }
        if (out.empty()) return std::nullopt;
        return out;
      }
    } catch (const nlohmann::json::exception&) {
      // fall through to line parsing
    }
  }
  for (const auto& raw : split_lines(t)) {
    std::string_view line = trim(raw);
    for (std::string_view bullet : {"- ", "* ", "• "}) {
      if (line.substr(0, bullet.size()) == bullet) {
        line = trim(line.substr(bullet.size()));
        break;
      }
    }
    if (!line.empty()) out.emplace_back(line);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

std::optional<ExtractionDraft> parse_extraction_table(std::string_view text) {
  const auto lines = split_lines(text);
  ExtractionDraft draft;
  bool in_fence = false;
  bool saw_fence = false;
  for (const auto& line : lines) {
    const std::string_view t = trim(line);
    if (t.substr(0, 3) == "```") {
      if (in_fence) {
        in_fence = false;
      } else if (!saw_fence) {
        in_fence = true;
        saw_fence = true;
      }
      continue;
    }
    if (take_field_line(t, draft)) continue;
    if (!in_fence || t.find('|') == std::string_view::npos) continue;
    auto cells = split_cells(t);
    if (is_separator_row(cells)) continue;
    if (to_lower_ascii(cells.front()) == "space") continue;  // header
    if (cells.size() != 5) continue;
    draft.rows.push_back({cells[0], cells[1], cells[2], cells[3], cells[4]});
  }
  if (!saw_fence) return std::nullopt;
  return draft;
}

// ---------------------------------------------------------------------------
// Gateway

Gateway::Gateway(std::shared_ptr<Backend> backend, GatewayOptions options)
    : backend_(std::move(backend)),
      options_(std::move(options)),
      limiter_(options_.rate_limit, options_.rate_burst) {
  if (!options_.sleep)
    options_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  if (options_.cache_dir) std::filesystem::create_directories(*options_.cache_dir);
}

std::optional<std::string> Gateway::cache_lookup(const std::string& fp) {
  {
    std::lock_guard lock(mu_);
    if (auto it = memory_cache_.find(fp); it != memory_cache_.end()) return it->second;
  }
  if (!options_.cache_dir) return std::nullopt;
  std::ifstream in(*options_.cache_dir / (fp + ".json"), std::ios::binary);
  if (!in) return std::nullopt;
  try {
    Json entry = Json::parse(in);
    std::string response = entry.at("response").get<std::string>();
    std::lock_guard lock(mu_);
    memory_cache_[fp] = response;
    return response;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;  // corrupt entry: refetch
  }
}

void Gateway::cache_store(const std::string& fp, const PromptRequest& req,
                          const std::string& response) {
  {
    std::lock_guard lock(mu_);
    memory_cache_[fp] = response;
  }
  if (!options_.cache_dir) return;
  Json entry;
  entry["request"] = Json{{"tag", req.tag},
                          {"model", backend_->model_id()},
                          {"system", req.system_text},
                          {"user", req.user_text},
                          {"temperature", req.decoding.temperature},
                          {"max_output_tokens", req.decoding.max_output_tokens},
                          {"template_hash", req.template_hash}};
  entry["response"] = response;
  entry["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(
                           std::chrono::system_clock::now().time_since_epoch())
                           .count();
  const auto final_path = *options_.cache_dir / (fp + ".json");
  std::ostringstream tid;
  tid << std::this_thread::get_id();
  const auto tmp_path = *options_.cache_dir / (fp + ".json.tmp" + tid.str());
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    out << entry.dump(2) << "\n";
  }
  std::error_code ec;
  std::filesystem::rename(tmp_path, final_path, ec);
  if (ec) std::filesystem::remove(tmp_path, ec);
}

void Gateway::record(CallRecord rec) {
  std::lock_guard lock(mu_);
  calls_.push_back(std::move(rec));
}

Completion Gateway::complete(const PromptRequest& req) {
  if (req.decoding.temperature < 0.0 || req.decoding.max_output_tokens <= 0)
    throw std::invalid_argument("invalid decoding parameters for " + req.tag);

  const auto started = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
        .count();
  };
  Completion out;
  out.fingerprint = fingerprint(req, backend_->model_id());
  const bool cacheable = options_.cache_enabled && req.decoding.temperature == 0.0;

  if (cacheable) {
    if (auto hit = cache_lookup(out.fingerprint)) {
      out.text = *hit;
      out.from_cache = true;
      record({req.tag, out.fingerprint, out.text, elapsed_ms(), 0, true, false});
      return out;
    }
  }

  const int max_attempts = options_.max_retries + 1;
  for (int attempt = 1;; ++attempt) {
    limiter_.acquire();
    try {
      out.text = backend_->send(req);
      out.attempts = attempt;
      break;
    } catch (const TransportError& e) {
      if (attempt >= max_attempts) {
        record({req.tag, out.fingerprint, {}, elapsed_ms(), attempt, false, true});
        throw BackendExhaustedError(req.tag, "transport failed after " + std::to_string(attempt) +
                                                 " attempts: " + e.what());
      }
      options_.sleep(options_.initial_backoff * (1 << (attempt - 1)));
    } catch (const GatewayError&) {
      record({req.tag, out.fingerprint, {}, elapsed_ms(), attempt, false, true});
      throw;
    }
  }

  if (cacheable) cache_store(out.fingerprint, req, out.text);
  record({req.tag, out.fingerprint, out.text, elapsed_ms(), out.attempts, false, false});
  return out;
}

template <typename T>
T Gateway::complete_structured(const PromptRequest& req,
                               const std::function<std::optional<T>(std::string_view)>& parse,
                               std::string_view format_hint) {
  PromptRequest attempt_req = req;
  std::string last;
  for (int reprompt = 0; reprompt <= options_.max_reprompts; ++reprompt) {
    if (reprompt > 0) {
      attempt_req.user_text = req.user_text + "\n\nYour previous reply could not be parsed (retry " +
                              std::to_string(reprompt) + "). " + std::string(format_hint);
    }
    last = complete(attempt_req).text;
    if (auto parsed = parse(last)) return std::move(*parsed);
  }
  throw StructuredOutputError(req.tag, "unparseable reply after " +
                                           std::to_string(options_.max_reprompts + 1) +
                                           " attempts: '" + last.substr(0, 80) + "'");
}

bool Gateway::complete_boolean(const PromptRequest& req) {
  return complete_structured<bool>(req, parse_boolean_verdict,
                                   "Answer with exactly one word: true or false.");
}

std::string Gateway::complete_choice(const PromptRequest& req,
                                     const std::vector<std::string>& options) {
  return complete_structured<std::string>(
      req, [&](std::string_view t) { return parse_single_choice(t, options); },
      "Answer with exactly one of: " + join(options, ", ") + ".");
}

std::vector<std::string> Gateway::complete_segments(const PromptRequest& req) {
  return complete_structured<std::vector<std::string>>(
      req, parse_segment_list, "Return the unit segments, one per line, copied verbatim.");
}

ExtractionDraft Gateway::complete_table(const PromptRequest& req) {
  return complete_structured<ExtractionDraft>(
      req, parse_extraction_table,
      "Return a fenced table with columns space | breakdown | kind | feature | value.");
}

std::vector<CallRecord> Gateway::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

std::size_t Gateway::call_count(std::string_view tag_prefix) const {
  std::lock_guard lock(mu_);
  std::size_t n = 0;
  for (const auto& c : calls_)
    if (std::string_view(c.tag).substr(0, tag_prefix.size()) == tag_prefix) ++n;
  return n;
}

void Gateway::clear_calls() {
  std::lock_guard lock(mu_);
  calls_.clear();
}

}  // namespace gistvis
