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

#include <stdexcept>

#include "gistvis/gateway.h"
#include "httplib.h"
#include "json.hpp"

namespace gistvis {

HttpBackend::HttpBackend(std::string endpoint_url, std::string model_id, std::string api_key,
                         std::chrono::seconds timeout)
    : model_id_(std::move(model_id)), api_key_(std::move(api_key)), timeout_(timeout) {
  const std::size_t scheme_end = endpoint_url.find("://");
  if (scheme_end == std::string::npos)
    throw std::invalid_argument("endpoint must be an absolute http(s) URL: " + endpoint_url);
  const std::size_t path_start = endpoint_url.find('/', scheme_end + 3);
  scheme_host_port_ = endpoint_url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : endpoint_url.substr(path_start);
}

std::string HttpBackend::send(const PromptRequest& req) {
  nlohmann::json body;
  body["model"] = model_id_;
  body["messages"] = nlohmann::json::array({
      {{"role", "system"}, {"content", req.system_text}},
      {{"role", "user"}, {"content", req.user_text}},
  });
  body["temperature"] = req.decoding.temperature;
  body["max_tokens"] = req.decoding.max_output_tokens;
  body["stream"] = false;

  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  auto res = client.Post(path_, headers, body.dump(), "application/json");
  if (!res) throw TransportError("request failed: " + httplib::to_string(res.error()));
  if (res->status == 429 || res->status >= 500)
    throw TransportError("server returned HTTP " + std::to_string(res->status));
  if (res->status < 200 || res->status >= 300)
    throw GatewayError(req.tag, "server rejected request with HTTP " + std::to_string(res->status) +
                                    ": " + res->body.substr(0, 200));
  try {
    auto reply = nlohmann::json::parse(res->body);
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw TransportError(std::string("malformed completion payload: ") + e.what());
  }
}

}  // namespace gistvis
