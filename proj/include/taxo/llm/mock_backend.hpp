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
#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "taxo/llm/backend.hpp"

namespace taxo {

enum class MatchMode {
  exact,       // whole flattened prompt
  suffix,      // prompt ends with pattern
  substring,   // prompt contains pattern
  request_id,  // pattern is a request id
};

struct MockRule {
  std::string pattern;
  std::string response;
  MatchMode mode = MatchMode::substring;

  friend bool operator==(const MockRule&, const MockRule&) = default;
};

// Deterministic backend answering from a fixture table.
class MockBackend final : public ChatBackend {
 public:
  struct Options {
    // Prompts longer than this many tokens raise ContextOverflow; 0 = no limit.
    std::size_t context_window = 0;
    // The first N calls raise TransientBackendError.
    int transient_failures = 0;
    // Tokenizer for usage numbers.
    std::string tokenizer = "chars4";
  };

  explicit MockBackend(Options options);

  // Throws InvalidConfig when a rule overlaps one already registered (same
  // key, or one pattern subsuming another). Identical rules are ignored.
  void add_rule(MockRule rule);

  // Throws MockMiss when nothing matches and InvalidConfig when several
  // rules match the same request.
  ChatResponse complete(const ChatRequest& request) override;

  std::size_t calls() const noexcept { return calls_; }
  std::size_t rule_count() const noexcept { return rules_.size(); }

 private:
  Options options_;
  std::vector<MockRule> rules_;
  std::atomic<std::size_t> calls_{0};
  std::atomic<int> failures_left_;
};

std::shared_ptr<MockBackend> register_mock(const std::vector<MockRule>& fixtures,
                                           MockBackend::Options options = {});

// Reads {"context_window": N, "transient_failures": N, "rules": [{"match": "...", "pattern": "...",
// "response": "..."}]} from a JSON file.
std::shared_ptr<MockBackend> load_mock_fixture(const std::filesystem::path& path);

MatchMode parse_match_mode(const std::string& s);

}  // namespace taxo
