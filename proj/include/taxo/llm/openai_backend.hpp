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

#include <memory>
#include <string>

#include "taxo/llm/backend.hpp"

namespace taxo {

// OpenAI-compatible chat-completions client (POST {base}/chat/completions).
class OpenAiBackend final : public ChatBackend {
 public:
  struct Options {
    std::string base_url = "https://api.openai.com/v1";
    // Read from TAXO_LLM_API_KEY when empty.
    std::string api_key;
    double connect_timeout_s = 10.0;
    double read_timeout_s = 120.0;
  };

  explicit OpenAiBackend(Options options);

  // 401/403 -> AuthError; context-length errors -> ContextOverflow;
  // 429, 5xx and network failures -> TransientBackendError.
  ChatResponse complete(const ChatRequest& request) override;

 private:
  std::string scheme_host_;
  std::string path_prefix_;
  Options options_;
};

}  // namespace taxo
