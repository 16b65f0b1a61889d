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

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include <unistd.h>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "taxo/core/errors.hpp"
#include "taxo/llm/chat_types.hpp"
#include "taxo/llm/gateway.hpp"
#include "taxo/llm/mock_backend.hpp"
#include "taxo/llm/openai_backend.hpp"
#include "taxo/llm/rate_limiter.hpp"

using namespace taxo;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("taxo-llm-test-" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Backend scripted by a list of outcomes; "!t" transient, "!a" auth.
class ScriptedBackend final : public ChatBackend {
 public:
  explicit ScriptedBackend(std::vector<std::string> script) : script_(std::move(script)) {}
  ChatResponse complete(const ChatRequest&) override {
    const auto i = calls++;
    const auto& s = script_[std::min<std::size_t>(i, script_.size() - 1)];
    if (s == "!t") throw TransientBackendError("try again");
    if (s == "!a") throw AuthError("bad key");
    return ChatResponse{s, 10, 2, false, 1.0};
  }
  std::atomic<std::size_t> calls{0};

 private:
  std::vector<std::string> script_;
};

GatewayOptions quiet(std::vector<std::chrono::milliseconds>* sleeps = nullptr) {
  GatewayOptions o;
  o.sleeper = [sleeps](std::chrono::milliseconds d) {
    if (sleeps) sleeps->push_back(d);
  };
  return o;
}

}  // namespace

TEST_CASE("request ids are content hashes") {
  const auto a = make_user_request("m", "prompt");
  CHECK(a.request_id() == make_user_request("m", "prompt").request_id());
  CHECK(a.request_id() != make_user_request("m2", "prompt").request_id());
  CHECK(a.request_id() != make_user_request("m", "prompt", 0.5).request_id());
  CHECK(a.request_id() != make_user_request("m", "prompt", 0.0, 10).request_id());
  CHECK(a.request_id().size() == 64);
  const auto back = ChatRequest::from_json(a.to_json());
  CHECK(back.request_id() == a.request_id());
  CHECK_THROWS_AS(ChatRequest{}.validate(), InvalidConfig);
  CHECK_THROWS_AS(make_user_request("m", "p", -1).validate(), InvalidConfig);
  CHECK_THROWS_AS(make_user_request("m", "p", 0, 0).validate(), InvalidConfig);
  ChatRequest assistant_first{"m", {{"assistant", "x"}}};
  CHECK_THROWS_AS(assistant_first.validate(), InvalidConfig);
  CHECK(flatten_messages({{"system", "a"}, {"user", "b"}}) == "a\n\nb");
}

TEST_CASE("mock backend matching") {
  MockBackend m({});
  m.add_rule({"Query: alpha", "alpha.add_parent(root)", MatchMode::suffix});
  m.add_rule({"Query: alpha", "alpha.add_parent(root)", MatchMode::suffix});  // identical, ignored
  m.add_rule({"beta", "b", MatchMode::substring});
  CHECK(m.rule_count() == 2);
  CHECK(m.complete(make_user_request("x", "prefix\nQuery: alpha")).text == "alpha.add_parent(root)");
  CHECK_THROWS_AS(m.complete(make_user_request("x", "nothing here")), MockMiss);
  CHECK_THROWS_AS(m.complete(make_user_request("x", "beta ... Query: alpha")), InvalidConfig);
  const auto r = m.complete(make_user_request("x", "has beta inside"));
  CHECK(r.prompt_tokens == 4);  // chars4 over 15 bytes
  CHECK(r.completion_tokens == 1);

  CHECK_THROWS_AS(m.add_rule({"Query: alpha", "other", MatchMode::suffix}), InvalidConfig);
  CHECK_THROWS_AS(m.add_rule({"alpha", "other", MatchMode::suffix}), InvalidConfig);
  CHECK_THROWS_AS(m.add_rule({"bet", "other", MatchMode::substring}), InvalidConfig);
  CHECK_THROWS_AS(m.add_rule({"", "other", MatchMode::exact}), InvalidConfig);

  const auto req = make_user_request("x", "anything");
  MockBackend byid({});
  byid.add_rule({req.request_id(), "by id", MatchMode::request_id});
  CHECK(byid.complete(req).text == "by id");
}

TEST_CASE("mock backend context window and transient failures") {
  MockBackend::Options o;
  o.context_window = 5;
  o.transient_failures = 1;
  MockBackend m(o);
  m.add_rule({"x", "y", MatchMode::substring});
  CHECK_THROWS_AS(m.complete(make_user_request("m", std::string(100, 'x'))), ContextOverflow);
  CHECK_THROWS_AS(m.complete(make_user_request("m", "x")), TransientBackendError);
  CHECK(m.complete(make_user_request("m", "x")).text == "y");
}

TEST_CASE("mock fixture file") {
  const auto dir = scratch_dir("fixture");
  std::ofstream(dir / "mock.json") << R"j({"context_window": 0, "rules": [
    {"match": "suffix", "pattern": "END", "response": "a.add_parent(b)"},
    {"match": "exact", "pattern": "whole", "response": "w"}]})j";
  auto m = load_mock_fixture(dir / "mock.json");
  CHECK(m->complete(make_user_request("m", "... END")).text == "a.add_parent(b)");
  CHECK(m->complete(make_user_request("m", "whole")).text == "w");
  std::ofstream(dir / "bad.json") << R"({"rules": [{"match": "regex", "pattern": "x", "response": "y"}]})";
  CHECK_THROWS_AS(load_mock_fixture(dir / "bad.json"), InvalidConfig);
  CHECK_THROWS_AS(parse_match_mode("glob"), InvalidConfig);
}

TEST_CASE("gateway caches in memory and on disk") {
  const auto dir = scratch_dir("cache");
  auto backend = std::make_shared<ScriptedBackend>(std::vector<std::string>{"answer"});
  const auto req = make_user_request("m", "prompt");
  {
    auto o = quiet();
    o.cache_dir = dir;
    LlmGateway g(o);
    g.register_backend("m", backend);
    const auto first = g.complete(req);
    CHECK(!first.cached);
    const auto second = g.complete(req);
    CHECK(second.cached);
    CHECK(second.text == "answer");
    CHECK(second.prompt_tokens == first.prompt_tokens);
    CHECK(g.stats().requests == 2);
    CHECK(g.stats().cache_hits == 1);
    CHECK(g.stats().backend_calls == 1);
  }
  const auto id = req.request_id();
  CHECK(fs::exists(dir / id.substr(0, 2) / (id + ".json")));
  // A fresh gateway over the same directory never calls the backend.
  auto o = quiet();
  o.cache_dir = dir;
  LlmGateway g2(o);
  g2.register_backend("m", backend);
  CHECK(g2.complete(req).cached);
  CHECK(backend->calls == 1);
}

TEST_CASE("gateway retries with exponential backoff") {
  std::vector<std::chrono::milliseconds> sleeps;
  auto backend = std::make_shared<ScriptedBackend>(std::vector<std::string>{"!t", "!t", "ok"});
  LlmGateway g(quiet(&sleeps));
  g.register_backend("*", backend);
  CHECK(g.complete(make_user_request("any", "p")).text == "ok");
  REQUIRE(sleeps.size() == 2);
  CHECK(sleeps[1].count() == 2 * sleeps[0].count());

  auto down = std::make_shared<ScriptedBackend>(std::vector<std::string>{"!t"});
  LlmGateway g2(quiet());
  g2.register_backend("*", down);
  CHECK_THROWS_AS(g2.complete(make_user_request("any", "p")), BackendUnavailable);
  CHECK(down->calls == 5);

  auto auth = std::make_shared<ScriptedBackend>(std::vector<std::string>{"!a"});
  LlmGateway g3(quiet());
  g3.register_backend("*", auth);
  CHECK_THROWS_AS(g3.complete(make_user_request("any", "p")), AuthError);
  CHECK(auth->calls == 1);

  LlmGateway g4(quiet());
  CHECK_THROWS_AS(g4.complete(make_user_request("unrouted", "p")), InvalidConfig);
}

TEST_CASE("gateway serializes identical concurrent requests") {
  auto backend = std::make_shared<ScriptedBackend>(std::vector<std::string>{"same"});
  LlmGateway g(quiet());
  g.register_backend("*", backend);
  std::vector<std::jthread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&] {
      for (int k = 0; k < 20; ++k) CHECK(g.complete(make_user_request("m", "p" + std::to_string(k % 4))).text == "same");
    });
  }
  threads.clear();
  CHECK(backend->calls == 4);
}

TEST_CASE("token bucket") {
  std::chrono::nanoseconds slept{0};
  TokenBucket b(10.0, 2.0, [&](std::chrono::nanoseconds d) { slept += d; });
  CHECK(b.try_acquire());
  CHECK(b.try_acquire());
  CHECK(!b.try_acquire());
  TokenBucket real(1000.0, 1.0);
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 20; ++i) real.acquire();
  CHECK(std::chrono::steady_clock::now() - start >= std::chrono::milliseconds(15));
  CHECK_THROWS_AS(TokenBucket(0.0, 1.0), InvalidConfig);
}

TEST_CASE("openai backend against a local endpoint") {
  httplib::Server server;
  std::atomic<int> mode{0};
  std::string seen_auth;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    seen_auth = req.get_header_value("Authorization");
    const auto body = nlohmann::json::parse(req.body);
    switch (mode.load()) {
      case 0:
        res.set_content(nlohmann::json{{"choices", {{{"message", {{"role", "assistant"},
                                                                   {"content", body["model"].get<std::string>()}}}}}},
                                       {"usage", {{"prompt_tokens", 12}, {"completion_tokens", 3}}}}
                            .dump(),
                        "application/json");
        break;
      case 1: res.status = 401; break;
      case 2: res.status = 429; break;
      case 3:
        res.status = 400;
        res.set_content(R"({"error": {"code": "context_length_exceeded", "message": "too long"}})", "application/json");
        break;
    }
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  OpenAiBackend::Options o;
  o.base_url = "http://127.0.0.1:" + std::to_string(port) + "/v1/";
  o.api_key = "sk-test";
  OpenAiBackend b(o);
  const auto r = b.complete(make_user_request("gpt-4o", "hi"));
  CHECK(r.text == "gpt-4o");
  CHECK(r.prompt_tokens == 12);
  CHECK(r.completion_tokens == 3);
  CHECK(seen_auth == "Bearer sk-test");
  mode = 1;
  CHECK_THROWS_AS(b.complete(make_user_request("gpt-4o", "hi")), AuthError);
  mode = 2;
  CHECK_THROWS_AS(b.complete(make_user_request("gpt-4o", "hi")), TransientBackendError);
  mode = 3;
  CHECK_THROWS_AS(b.complete(make_user_request("gpt-4o", "hi")), ContextOverflow);
  server.stop();
  t.join();

  o.connect_timeout_s = 0.5;
  o.base_url = "http://127.0.0.1:9/v1";
  CHECK_THROWS_AS(OpenAiBackend(o).complete(make_user_request("m", "x")), TransientBackendError);
  o.api_key.clear();
  ::unsetenv("TAXO_LLM_API_KEY");
  CHECK_THROWS_AS(OpenAiBackend(o).complete(make_user_request("m", "x")), AuthError);
}
