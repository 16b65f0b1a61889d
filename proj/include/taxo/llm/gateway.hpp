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

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <unordered_map>

#include "taxo/llm/backend.hpp"
#include "taxo/llm/rate_limiter.hpp"

namespace taxo {

struct RateLimit {
  double requests_per_second = 0;
  double burst = 1;
};

struct GatewayOptions {
  int max_attempts = 5;
  std::chrono::milliseconds retry_base{1000};
  double retry_factor = 2.0;
  std::size_t max_in_flight = 4;  // per backend
  // Responses are persisted here, one JSON file per request id. Memory-only
  // when unset.
  std::optional<std::filesystem::path> cache_dir;
  std::function<void(std::chrono::milliseconds)> sleeper;
};

struct GatewayStats {
  std::size_t requests = 0;
  std::size_t cache_hits = 0;
  std::size_t backend_calls = 0;  // attempts, including failed ones
};

// Routes chat requests to backends by model tag, with caching, retry,
// rate limiting and a per-backend concurrency cap. Shareable across threads.
class LlmGateway {
 public:
  explicit LlmGateway(GatewayOptions options = {});
  ~LlmGateway();

  // `model_tag` "*" registers a fallback for unlisted tags.
  void register_backend(const std::string& model_tag, std::shared_ptr<ChatBackend> backend,
                        std::optional<RateLimit> rate = std::nullopt);

  // Cached responses come back with cached = true and the original token
  // counts. Throws BackendUnavailable after max_attempts transient failures;
  // AuthError, ContextOverflow, MockMiss and InvalidConfig pass through.
  ChatResponse complete(const ChatRequest& request);

  GatewayStats stats() const;

 private:
  struct Route;
  Route& route_for(const std::string& model_tag);
  std::shared_ptr<std::mutex> key_lock(const std::string& id);
  std::optional<ChatResponse> cache_lookup(const std::string& id);
  void cache_store(const std::string& id, const ChatRequest& request, const ChatResponse& response);
  std::filesystem::path cache_path(const std::string& id) const;

  GatewayOptions options_;
  std::mutex routes_mu_;
  std::map<std::string, std::unique_ptr<Route>> routes_;

  std::mutex keys_mu_;
  std::unordered_map<std::string, std::weak_ptr<std::mutex>> key_locks_;

  std::mutex memo_mu_;
  std::unordered_map<std::string, ChatResponse> memo_;

  std::atomic<std::size_t> requests_{0};
  std::atomic<std::size_t> cache_hits_{0};
  std::atomic<std::size_t> backend_calls_{0};
};

}  // namespace taxo
