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

#include "taxo/llm/rate_limiter.hpp"

#include <algorithm>
#include <thread>

#include "taxo/core/errors.hpp"

namespace taxo {

TokenBucket::TokenBucket(double rate_per_second, double burst, Sleeper sleeper)
    : rate_(rate_per_second), burst_(burst), tokens_(burst), last_(Clock::now()),
      sleeper_(std::move(sleeper)) {
  if (!(rate_ > 0) || !(burst_ >= 1)) throw InvalidConfig("rate limit needs rate > 0 and burst >= 1");
  if (!sleeper_) sleeper_ = [](std::chrono::nanoseconds d) { std::this_thread::sleep_for(d); };
}

void TokenBucket::refill(Clock::time_point now) {
  const std::chrono::duration<double> dt = now - last_;
  tokens_ = std::min(burst_, tokens_ + dt.count() * rate_);
  last_ = now;
}

bool TokenBucket::try_acquire() {
  std::lock_guard lock(mu_);
  refill(Clock::now());
  if (tokens_ < 1.0) return false;
  tokens_ -= 1.0;
  return true;
}

void TokenBucket::acquire() {
  while (true) {
    std::chrono::nanoseconds wait;
    {
      std::lock_guard lock(mu_);
      refill(Clock::now());
      if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return;
      }
      wait = std::chrono::nanoseconds(static_cast<long long>((1.0 - tokens_) / rate_ * 1e9) + 1);
    }
    sleeper_(wait);
  }
}

}  // namespace taxo
