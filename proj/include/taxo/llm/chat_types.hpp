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

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

namespace taxo {

struct ChatMessage {
  std::string role;  // system, user or assistant
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct ChatRequest {
  std::string model_tag;
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
  int max_output_tokens = 256;

  // sha256 over all four fields, each length-prefixed.
  std::string request_id() const;
  // Throws InvalidConfig: empty messages, first role not system/user,
  // negative temperature, non-positive token limit.
  void validate() const;

  nlohmann::ordered_json to_json() const;
  static ChatRequest from_json(const nlohmann::json& j);
};

struct ChatResponse {
  std::string text;
  std::size_t prompt_tokens = 0;
  std::size_t completion_tokens = 0;
  bool cached = false;
  double latency_ms = 0.0;

  nlohmann::ordered_json to_json() const;
  static ChatResponse from_json(const nlohmann::json& j);
};

// One user turn carrying the whole prompt.
ChatRequest make_user_request(std::string model_tag, std::string prompt, double temperature = 0.0,
                              int max_output_tokens = 256);

// Everything a backend needs to see of a request, as one string: message
// contents joined by blank lines.
std::string flatten_messages(const std::vector<ChatMessage>& messages);

}  // namespace taxo
