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

#include "taxo/llm/mock_backend.hpp"

#include <algorithm>

#include "json.hpp"
#include "taxo/core/errors.hpp"
#include "taxo/core/paths.hpp"
#include "taxo/prompt/tokenizer.hpp"

namespace taxo {
namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool contains(std::string_view s, std::string_view part) { return s.find(part) != std::string_view::npos; }

// True when some prompt could match both rules, judged from the patterns
// alone. Incomparable text-based pairs are caught at request time instead.
bool overlaps(const MockRule& a, const MockRule& b) {
  using M = MatchMode;
  if ((a.mode == M::request_id) != (b.mode == M::request_id)) return false;
  if (a.mode == M::request_id) return a.pattern == b.pattern;
  auto rank = [](M m) { return m == M::exact ? 0 : m == M::suffix ? 1 : 2; };
  const MockRule& x = rank(a.mode) <= rank(b.mode) ? a : b;  // the stricter rule
  const MockRule& y = &x == &a ? b : a;
  switch (y.mode) {
    case M::exact: return x.pattern == y.pattern;
    case M::suffix: return ends_with(x.pattern, y.pattern) || (x.mode == M::suffix && ends_with(y.pattern, x.pattern));
    default: return contains(x.pattern, y.pattern) || (x.mode == M::substring && contains(y.pattern, x.pattern));
  }
}

bool matches(const MockRule& r, const ChatRequest& req, const std::string& prompt, const std::string& id) {
  switch (r.mode) {
    case MatchMode::exact: return prompt == r.pattern;
    case MatchMode::suffix: return ends_with(prompt, r.pattern);
    case MatchMode::substring: return contains(prompt, r.pattern);
    case MatchMode::request_id: return id == r.pattern;
  }
  (void)req;
  return false;
}

}  // namespace

MatchMode parse_match_mode(const std::string& s) {
  if (s == "exact") return MatchMode::exact;
  if (s == "suffix") return MatchMode::suffix;
  if (s == "substring") return MatchMode::substring;
  if (s == "request_id") return MatchMode::request_id;
  throw InvalidConfig("unknown mock match mode '" + s + "'");
}

MockBackend::MockBackend(Options options)
    : options_(std::move(options)), failures_left_(options_.transient_failures) {
  (void)tokenizer(options_.tokenizer);  // validate the tag up front
}

void MockBackend::add_rule(MockRule rule) {
  if (rule.pattern.empty()) throw InvalidConfig("mock rule with empty pattern");
  for (const auto& r : rules_) {
    if (r == rule) return;
    if (overlaps(r, rule)) {
      throw InvalidConfig("mock pattern overlaps an existing rule: '" + rule.pattern.substr(0, 80) + "'");
    }
  }
  rules_.push_back(std::move(rule));
}

ChatResponse MockBackend::complete(const ChatRequest& request) {
  ++calls_;
  const std::string prompt = flatten_messages(request.messages);
  const Tokenizer& tok = tokenizer(options_.tokenizer);
  const std::size_t prompt_tokens = tok.count(prompt);
  if (options_.context_window > 0 && prompt_tokens > options_.context_window) {
    throw ContextOverflow("prompt of " + std::to_string(prompt_tokens) +
                          " tokens exceeds the context window of " +
                          std::to_string(options_.context_window));
  }
  if (failures_left_.fetch_sub(1) > 0) throw TransientBackendError("simulated transient failure");

  // Hashing a long prompt is not free; only request_id rules need it.
  const bool by_id = std::any_of(rules_.begin(), rules_.end(),
                                 [](const MockRule& r) { return r.mode == MatchMode::request_id; });
  const std::string id = by_id ? request.request_id() : std::string();
  const MockRule* hit = nullptr;
  for (const auto& r : rules_) {
    if (!matches(r, request, prompt, id)) continue;
    if (hit != nullptr) throw InvalidConfig("request matches several mock rules");
    hit = &r;
  }
  if (hit == nullptr) throw MockMiss("no mock rule matches request " + request.request_id().substr(0, 12));
  ChatResponse resp;
  resp.text = hit->response;
  resp.prompt_tokens = prompt_tokens;
  resp.completion_tokens = tok.count(hit->response);
  return resp;
}

std::shared_ptr<MockBackend> register_mock(const std::vector<MockRule>& fixtures, MockBackend::Options options) {
  auto backend = std::make_shared<MockBackend>(std::move(options));
  for (const auto& r : fixtures) backend->add_rule(r);
  return backend;
}

std::shared_ptr<MockBackend> load_mock_fixture(const std::filesystem::path& path) {
  try {
    auto j = nlohmann::json::parse(read_file(path));
    MockBackend::Options options;
    options.context_window = j.value("context_window", std::size_t{0});
    options.tokenizer = j.value("tokenizer", std::string("chars4"));
    options.transient_failures = j.value("transient_failures", 0);
    std::vector<MockRule> rules;
    for (const auto& r : j.at("rules")) {
      rules.push_back(MockRule{r.at("pattern").get<std::string>(), r.at("response").get<std::string>(),
                               parse_match_mode(r.value("match", std::string("substring")))});
    }
    return register_mock(rules, options);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig(path.string() + ": " + e.what());
  }
}

}  // namespace taxo
