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

// Chat-completion access for the LLM-driven stages: fingerprinted requests,
// transport retries with backoff, a token-bucket rate limiter, a response
// cache, and structured-output parsing with corrective re-prompts.

#ifndef GISTVIS_GATEWAY_H_
#define GISTVIS_GATEWAY_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gistvis/fact_model.h"

namespace gistvis {

struct Decoding {
  double temperature = 0.0;
  int max_output_tokens = 1024;
};

struct PromptRequest {
  std::string system_text;
  std::string user_text;
  Decoding decoding;
  std::string tag;            // stage name, e.g. "checker.value"
  std::string template_hash;  // hash of the prompt template file(s) used
};

// Hash over (system_text, user_text, decoding, model id, template hash).
std::string fingerprint(const PromptRequest& req, std::string_view model_id);

class GatewayError : public std::runtime_error {
 public:
  GatewayError(std::string tag, const std::string& what)
      : std::runtime_error("[" + tag + "] " + what), tag_(std::move(tag)) {}
  const std::string& tag() const { return tag_; }

 private:
  std::string tag_;
};

// Transport kept failing after every retry.
class BackendExhaustedError : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

// The scripted backend has no response for a request: a test setup error.
class ScriptMissError : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

// The model's answer could not be parsed into the expected shape.
class StructuredOutputError : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

// Thrown by backends for failures worth retrying.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string kind() const = 0;
  virtual std::string model_id() const = 0;
  virtual std::string send(const PromptRequest& req) = 0;
};

// Deterministic stand-in for a model. Responses are looked up by request
// fingerprint first, then by authoring rules (tag pattern + substring of the
// user text), in insertion order. A response of kTransportFailure simulates
// a transport error. A sequence plays its outcomes in order, repeating the
// last one once exhausted.
class ScriptedBackend : public Backend {
 public:
  static constexpr std::string_view kTransportFailure = "!transport_failure";

  explicit ScriptedBackend(std::string model_id = "scripted");

  std::string kind() const override { return "scripted"; }
  std::string model_id() const override { return model_id_; }
  std::string send(const PromptRequest& req) override;

  void add(const std::string& fp, std::string response);
  void add_sequence(const std::string& fp, std::vector<std::string> outcomes);
  // `tag_pattern` matches a tag exactly, or by prefix when it ends in '*'.
  void add_rule(std::string tag_pattern, std::string contains, std::vector<std::string> outcomes);

  // Loads {"model": ..., "responses": [{"fingerprint"|"tag"+"contains",
  // "response"|"sequence"}]}.
  static std::unique_ptr<ScriptedBackend> from_json(std::string_view text);
  static std::unique_ptr<ScriptedBackend> from_file(const std::filesystem::path& path);

 private:
  struct Script {
    std::vector<std::string> outcomes;
    std::size_t next = 0;
    std::string play();
  };
  struct Rule {
    std::string tag_pattern;
    std::string contains;
    Script script;
  };

  std::string model_id_;
  std::mutex mu_;
  std::map<std::string, Script> by_fingerprint_;
  std::vector<Rule> rules_;
};

// Generic chat-completion HTTP contract: POST {model, messages, temperature,
// max_tokens}; reads choices[0].message.content.
class HttpBackend : public Backend {
 public:
  HttpBackend(std::string endpoint_url, std::string model_id, std::string api_key,
              std::chrono::seconds timeout = std::chrono::seconds(60));

  std::string kind() const override { return "live_http"; }
  std::string model_id() const override { return model_id_; }
  std::string send(const PromptRequest& req) override;

 private:
  std::string scheme_host_port_;
  std::string path_;
  std::string model_id_;
  std::string api_key_;
  std::chrono::seconds timeout_;
};

// Token bucket. A rate of zero disables limiting.
class RateLimiter {
 public:
  RateLimiter(double requests_per_second, double burst);
  void acquire();

 private:
  using Clock = std::chrono::steady_clock;
  double rate_;
  double capacity_;
  double tokens_;
  Clock::time_point last_;
  std::mutex mu_;
};

struct GatewayOptions {
  int max_retries = 3;   // transport retries after the first attempt
  int max_reprompts = 2; // corrective re-prompts after a parse failure
  std::chrono::milliseconds initial_backoff{200};
  bool cache_enabled = true;  // applies only to temperature-0 requests
  std::optional<std::filesystem::path> cache_dir;
  double rate_limit = 0.0;  // requests per second, 0 = unlimited
  double rate_burst = 1.0;
  std::function<void(std::chrono::milliseconds)> sleep;  // defaults to this_thread::sleep_for
};

struct Completion {
  std::string text;
  std::string fingerprint;
  int attempts = 0;
  bool from_cache = false;
};

struct CallRecord {
  std::string tag;
  std::string fingerprint;
  std::string response;
  double latency_ms = 0.0;
  int attempts = 0;
  bool from_cache = false;
  bool failed = false;
};

// Parsed reply of an extractor prompt, before any normalization.
struct ExtractionDraft {
  struct Row {
    std::string space;
    std::string breakdown;
    std::string breakdown_kind;  // as written by the model; may be empty
    std::string feature;
    std::string value_text;
  };
  std::vector<Row> rows;
  std::optional<std::string> attribute_text;
  std::vector<std::string> position_texts;
};

// Shape parsers. Each returns nullopt when the text does not fit the shape.
std::optional<bool> parse_boolean_verdict(std::string_view text);
std::optional<std::string> parse_single_choice(std::string_view text,
                                               const std::vector<std::string>& options);
std::optional<std::vector<std::string>> parse_segment_list(std::string_view text);
std::optional<ExtractionDraft> parse_extraction_table(std::string_view text);

class Gateway {
 public:
  Gateway(std::shared_ptr<Backend> backend, GatewayOptions options = {});

  // Raw completion with caching, rate limiting and transport retries.
  Completion complete(const PromptRequest& req);

  bool complete_boolean(const PromptRequest& req);
  std::string complete_choice(const PromptRequest& req, const std::vector<std::string>& options);
  std::vector<std::string> complete_segments(const PromptRequest& req);
  ExtractionDraft complete_table(const PromptRequest& req);

  std::vector<CallRecord> calls() const;
  // Number of complete() invocations whose tag starts with `tag_prefix`.
  std::size_t call_count(std::string_view tag_prefix = "") const;
  void clear_calls();

  const Backend& backend() const { return *backend_; }

 private:
  template <typename T>
  T complete_structured(const PromptRequest& req,
                        const std::function<std::optional<T>(std::string_view)>& parse,
                        std::string_view format_hint);

  std::optional<std::string> cache_lookup(const std::string& fp);
  void cache_store(const std::string& fp, const PromptRequest& req, const std::string& response);
  void record(CallRecord rec);

  std::shared_ptr<Backend> backend_;
  GatewayOptions options_;
  RateLimiter limiter_;
  mutable std::mutex mu_;
  std::map<std::string, std::string> memory_cache_;
  std::vector<CallRecord> calls_;
};

}  // namespace gistvis

#endif  // GISTVIS_GATEWAY_H_
