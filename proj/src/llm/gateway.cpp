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

#include "taxo/llm/gateway.hpp"

#include <cmath>
#include <thread>

#include "json.hpp"
#include "taxo/core/errors.hpp"
#include "taxo/core/paths.hpp"

namespace taxo {

struct LlmGateway::Route {
  std::shared_ptr<ChatBackend> backend;
  std::unique_ptr<std::counting_semaphore<>> slots;
  std::unique_ptr<TokenBucket> bucket;
};

LlmGateway::LlmGateway(GatewayOptions options) : options_(std::move(options)) {
  if (options_.max_attempts < 1 || options_.max_in_flight < 1 || options_.retry_factor < 1.0) {
    throw InvalidConfig("gateway retry and concurrency limits must be positive");
  }
  if (!options_.sleeper) {
    options_.sleeper = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

LlmGateway::~LlmGateway() = default;

void LlmGateway::register_backend(const std::string& model_tag, std::shared_ptr<ChatBackend> backend,
                                  std::optional<RateLimit> rate) {
  if (!backend) throw InvalidConfig("null backend for '" + model_tag + "'");
  auto route = std::make_unique<Route>();
  route->backend = std::move(backend);
  route->slots = std::make_unique<std::counting_semaphore<>>(static_cast<std::ptrdiff_t>(options_.max_in_flight));
  if (rate) route->bucket = std::make_unique<TokenBucket>(rate->requests_per_second, rate->burst);
  std::lock_guard lock(routes_mu_);
  routes_[model_tag] = std::move(route);
}

LlmGateway::Route& LlmGateway::route_for(const std::string& model_tag) {
  std::lock_guard lock(routes_mu_);
  auto it = routes_.find(model_tag);
  if (it == routes_.end()) it = routes_.find("*");
  if (it == routes_.end()) throw InvalidConfig("no backend configured for model '" + model_tag + "'");
  return *it->second;
}

std::shared_ptr<std::mutex> LlmGateway::key_lock(const std::string& id) {
  std::lock_guard lock(keys_mu_);
  if (key_locks_.size() > 4096) std::erase_if(key_locks_, [](const auto& kv) { return kv.second.expired(); });
  auto& weak = key_locks_[id];
  auto strong = weak.lock();
  if (!strong) {
    strong = std::make_shared<std::mutex>();
    weak = strong;
  }
  return strong;
}

std::filesystem::path LlmGateway::cache_path(const std::string& id) const {
  return *options_.cache_dir / id.substr(0, 2) / (id + ".json");
}

std::optional<ChatResponse> LlmGateway::cache_lookup(const std::string& id) {
  {
    std::lock_guard lock(memo_mu_);
    if (auto it = memo_.find(id); it != memo_.end()) return it->second;
  }
  if (!options_.cache_dir) return std::nullopt;
  const auto path = cache_path(id);
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    auto j = nlohmann::json::parse(read_file(path));
    auto resp = ChatResponse::from_json(j.at("response"));
    std::lock_guard lock(memo_mu_);
    memo_.emplace(id, resp);
    return resp;
  } catch (const nlohmann::json::exception&) {
    // A corrupt entry is treated as a miss and rewritten.
    return std::nullopt;
  }
}

void LlmGateway::cache_store(const std::string& id, const ChatRequest& request, const ChatResponse& response) {
  {
    std::lock_guard lock(memo_mu_);
    memo_[id] = response;
  }
  if (!options_.cache_dir) return;
  nlohmann::ordered_json j;
  j["request_id"] = id;
  j["request"] = request.to_json();
  j["response"] = response.to_json();
  write_file_atomically(cache_path(id), j.dump(2) + "\n");
}

ChatResponse LlmGateway::complete(const ChatRequest& request) {
  request.validate();
  ++requests_;
  const std::string id = request.request_id();
  // One caller per request id talks to the backend; the rest wait and then
  // find the entry in the cache.
  auto lock_ptr = key_lock(id);
  std::lock_guard key_guard(*lock_ptr);

  if (auto hit = cache_lookup(id)) {
    ++cache_hits_;
    hit->cached = true;
    return *hit;
  }

  Route& route = route_for(request.model_tag);
  auto delay = options_.retry_base;
  for (int attempt = 1;; ++attempt) {
    if (route.bucket) route.bucket->acquire();
    route.slots->acquire();
    const auto start = std::chrono::steady_clock::now();
    try {
      ++backend_calls_;
      ChatResponse resp = route.backend->complete(request);
      route.slots->release();
      resp.cached = false;
      resp.latency_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      cache_store(id, request, resp);
      return resp;
    } catch (const TransientBackendError& e) {
      route.slots->release();
      if (attempt >= options_.max_attempts) {
        throw BackendUnavailable("gave up after " + std::to_string(attempt) + " attempts: " + e.what());
      }
    } catch (...) {
      route.slots->release();
      throw;
    }
    options_.sleeper(delay);
    delay = std::chrono::milliseconds(static_cast<long long>(std::llround(delay.count() * options_.retry_factor)));
  }
}

GatewayStats LlmGateway::stats() const {
  return GatewayStats{requests_.load(), cache_hits_.load(), backend_calls_.load()};
}

}  // namespace taxo
