// Copyright 2026 The taxo-expand Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "taxo/llm/openai_backend.hpp"

#include <cstdlib>

#include "httplib.h"
#include "json.hpp"
#include "taxo/core/errors.hpp"

namespace taxo {

OpenAiBackend::OpenAiBackend(Options options) : options_(std::move(options)) {
  if (options_.api_key.empty()) {
    if (const char* env = std::getenv("TAXO_LLM_API_KEY"); env != nullptr) options_.api_key = env;
  }
  std::string url = options_.base_url;
  while (!url.empty() && url.back() == '/') url.pop_back();
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw InvalidConfig("API base URL needs a scheme: '" + url + "'");
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_ = url.substr(0, path_start);
  path_prefix_ = path_start == std::string::npos ? "" : url.substr(path_start);
}

ChatResponse OpenAiBackend::complete(const ChatRequest& request) {
  if (options_.api_key.empty()) throw AuthError("TAXO_LLM_API_KEY is not set");
  httplib::Client client(scheme_host_);
  if (!client.is_valid()) throw InvalidConfig("invalid API base URL '" + options_.base_url + "'");
  client.set_connection_timeout(std::chrono::duration<double>(options_.connect_timeout_s));
  client.set_read_timeout(std::chrono::duration<double>(options_.read_timeout_s));
  client.set_bearer_token_auth(options_.api_key);

  nlohmann::json body;
  body["model"] = request.model_tag;
  body["temperature"] = request.temperature;
  body["max_tokens"] = request.max_output_tokens;
  body["messages"] = nlohmann::json::array();
  for (const auto& m : request.messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});

  auto res = client.Post(path_prefix_ + "/chat/completions", body.dump(), "application/json");
  if (!res) throw TransientBackendError("chat endpoint unreachable: " + httplib::to_string(res.error()));
  const int status = res->status;
  if (status == 401 || status == 403) throw AuthError("chat endpoint rejected credentials (HTTP " + std::to_string(status) + ")");
  if (status == 429 || status >= 500) throw TransientBackendError("chat endpoint returned HTTP " + std::to_string(status));

  nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
  if (status != 200) {
    std::string code, message;
    if (!j.is_discarded() && j.contains("error") && j["error"].is_object()) {
      code = j["error"].value("code", nlohmann::json()).is_string() ? j["error"]["code"].get<std::string>() : "";
      message = j["error"].value("message", "");
    }
    if (code == "context_length_exceeded" || message.find("maximum context length") != std::string::npos) {
      throw ContextOverflow(message.empty() ? "context length exceeded" : message);
    }
    throw BackendUnavailable("chat endpoint returned HTTP " + std::to_string(status) + ": " +
                             (message.empty() ? res->body.substr(0, 200) : message));
  }
  if (j.is_discarded()) throw TransientBackendError("chat endpoint returned malformed JSON");
  try {
    ChatResponse out;
    const auto& content = j.at("choices").at(0).at("message").at("content");
    out.text = content.is_null() ? "" : content.get<std::string>();
    if (j.contains("usage")) {
      out.prompt_tokens = j["usage"].value("prompt_tokens", std::size_t{0});
      out.completion_tokens = j["usage"].value("completion_tokens", std::size_t{0});
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw TransientBackendError(std::string("unexpected chat response shape: ") + e.what());
  }
}

}  // namespace taxo
