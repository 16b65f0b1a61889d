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

#include "taxo/llm/chat_types.hpp"

#include <deque>
#include <iomanip>
#include <sstream>

#include "taxo/core/errors.hpp"
#include "taxo/core/hashing.hpp"

namespace taxo {

nlohmann::ordered_json ChatRequest::to_json() const {
  nlohmann::ordered_json j;
  j["model"] = model_tag;
  auto& msgs = j["messages"] = nlohmann::ordered_json::array();
  for (const auto& m : messages) msgs.push_back({{"role", m.role}, {"content", m.content}});
  j["temperature"] = temperature;
  j["max_output_tokens"] = max_output_tokens;
  return j;
}

ChatRequest ChatRequest::from_json(const nlohmann::json& j) {
  ChatRequest r;
  r.model_tag = j.at("model").get<std::string>();
  for (const auto& m : j.at("messages")) {
    r.messages.push_back({m.at("role").get<std::string>(), m.at("content").get<std::string>()});
  }
  r.temperature = j.at("temperature").get<double>();
  r.max_output_tokens = j.at("max_output_tokens").get<int>();
  return r;
}

std::string ChatRequest::request_id() const {
  // Length-prefixed fields; equivalent in identity to hashing the JSON form
  // but avoids serializing (and escaping) a long prompt.
  std::deque<std::string> heads;  // stable addresses for the views below
  std::vector<std::string_view> parts;
  auto field = [&](std::string_view s) {
    heads.push_back(std::to_string(s.size()) + ":");
    parts.push_back(heads.back());
    parts.push_back(s);
  };
  std::ostringstream scalars;
  scalars << "chat-request/v1 " << model_tag.size() << ":" << model_tag << " t=" << std::setprecision(17) << temperature
          << " max=" << max_output_tokens << " n=" << messages.size() << ";";
  const std::string head = scalars.str();
  parts.push_back(head);
  for (const auto& m : messages) {
    field(m.role);
    field(m.content);
  }
  return sha256_hex(parts);
}

void ChatRequest::validate() const {
  if (messages.empty()) throw InvalidConfig("chat request has no messages");
  if (messages.front().role != "system" && messages.front().role != "user") {
    throw InvalidConfig("first message must come from system or user");
  }
  if (!(temperature >= 0.0)) throw InvalidConfig("temperature must be >= 0");
  if (max_output_tokens <= 0) throw InvalidConfig("max_output_tokens must be positive");
  if (model_tag.empty()) throw InvalidConfig("chat request has no model tag");
}

nlohmann::ordered_json ChatResponse::to_json() const {
  nlohmann::ordered_json j;
  j["text"] = text;
  j["prompt_tokens"] = prompt_tokens;
  j["completion_tokens"] = completion_tokens;
  j["latency_ms"] = latency_ms;
  return j;
}

ChatResponse ChatResponse::from_json(const nlohmann::json& j) {
  ChatResponse r;
  r.text = j.at("text").get<std::string>();
  r.prompt_tokens = j.at("prompt_tokens").get<std::size_t>();
  r.completion_tokens = j.at("completion_tokens").get<std::size_t>();
  r.latency_ms = j.value("latency_ms", 0.0);
  return r;
}

ChatRequest make_user_request(std::string model_tag, std::string prompt, double temperature,
                              int max_output_tokens) {
  ChatRequest r;
  r.model_tag = std::move(model_tag);
  r.messages.push_back({"user", std::move(prompt)});
  r.temperature = temperature;
  r.max_output_tokens = max_output_tokens;
  return r;
}

std::string flatten_messages(const std::vector<ChatMessage>& messages) {
  std::string out;
  for (const auto& m : messages) {
    if (!out.empty()) out += "\n\n";
    out += m.content;
  }
  return out;
}

}  // namespace taxo
