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
#include <cmath>
#include <filesystem>
#include <thread>

#include <unistd.h>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "taxo/core/errors.hpp"
#include "taxo/embedding/embedding.hpp"
#include "taxo/embedding/embedding_cache.hpp"
#include "taxo/embedding/embedding_client.hpp"
#include "taxo/embedding/provider.hpp"
#include "test_support.hpp"

using namespace taxo;
namespace fs = std::filesystem;

namespace {

std::vector<Entity> make_entities(std::size_t n) {
  std::vector<Entity> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(Entity{EntityId("e" + std::to_string(1000 + i)), "term " + std::to_string(i), "def " + std::to_string(i),
                         EntityId("root"), {}});
  }
  return out;
}

std::vector<const Entity*> ptrs(const std::vector<Entity>& v) {
  std::vector<const Entity*> out;
  for (const auto& e : v) out.push_back(&e);
  return out;
}

// Provider that fails the first `failures` calls.
class FlakyProvider final : public EmbeddingProvider {
 public:
  explicit FlakyProvider(int failures) : failures_(failures) {}
  std::string model_tag() override { return "flaky"; }
  std::vector<std::vector<float>> embed(const std::vector<std::string>& texts) override {
    if (failures_-- > 0) throw EmbeddingServiceUnavailable("down");
    return std::vector<std::vector<float>>(texts.size(), std::vector<float>{1.0f, 0.0f});
  }
  std::atomic<int> failures_;
};

// In-process stand-in for the sidecar.
class FakeSidecar {
 public:
  FakeSidecar() {
    server_.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
      res.status = healthy_ ? 200 : 503;
    });
    server_.Post("/embed", [this](const httplib::Request& req, httplib::Response& res) {
      ++posts_;
      if (fail_status_ != 0) {
        res.status = fail_status_;
        return;
      }
      const auto texts = nlohmann::json::parse(req.body).at("texts").get<std::vector<std::string>>();
      nlohmann::json vectors = nlohmann::json::array();
      for (std::size_t i = 0; i < texts.size() + extra_vectors_; ++i) {
        const float len = static_cast<float>(i < texts.size() ? texts[i].size() : 1);
        vectors.push_back({len, 1.0f, 0.5f});
      }
      res.set_content(nlohmann::json{{"model", model_}, {"dim", dim_}, {"vectors", vectors}}.dump(),
                      "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeSidecar() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

  std::atomic<bool> healthy_{true};
  std::atomic<int> fail_status_{0};
  std::atomic<int> posts_{0};
  std::size_t extra_vectors_ = 0;
  std::size_t dim_ = 3;
  std::string model_ = "fake-encoder";

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST_CASE("cosine_similarity") {
  const EmbeddingVector a{{1, 0}, "m"}, b{{0, 1}, "m"}, c{{2, 0}, "m"}, d{{-1, 0}, "m"};
  CHECK(cosine_similarity(a, b) == doctest::Approx(0.0));
  CHECK(cosine_similarity(a, c) == doctest::Approx(1.0));
  CHECK(cosine_similarity(a, d) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(cosine_similarity(a, EmbeddingVector{{1, 0, 0}, "m"}), ProviderMismatch);
  CHECK_THROWS_AS(cosine_similarity(a, EmbeddingVector{{1, 0}, "other"}), ProviderMismatch);
  CHECK_THROWS_AS(check_embedding({}), DataError);
  CHECK_THROWS_AS(check_embedding({0, 0}), DataError);
  CHECK_THROWS_AS(check_embedding({NAN, 1}), DataError);
  CHECK_NOTHROW(check_embedding({0, 1}));
}

TEST_CASE("filter_k") {
  CHECK(filter_k(0.5, 10) == 5);
  CHECK(filter_k(0.5, 11) == 6);
  CHECK(filter_k(0.01, 10) == 1);
  CHECK(filter_k(1.0, 7) == 7);
  CHECK(filter_k(0.3, 10) == 3);  // no spurious round-up from 0.3 * 10
}

TEST_CASE("embedding_text") {
  CHECK(embedding_text("dog", "a canine") == "dog a canine");
  CHECK(embedding_text("dog", "") == "dog");
}

TEST_CASE("hashing provider is deterministic and normalized") {
  HashingEmbeddingProvider p(64);
  const auto v = p.embed({"senile dementia", "senile dementia", "truck"});
  CHECK(v[0] == v[1]);
  CHECK(v[0].size() == 64);
  double norm = 0;
  for (float x : v[0]) norm += double(x) * x;
  CHECK(norm == doctest::Approx(1.0));
  const EmbeddingVector a{v[0], "h"}, b{p.embed_one("presenile dementia"), "h"}, c{v[2], "h"};
  CHECK(cosine_similarity(a, b) > cosine_similarity(a, c));
}

TEST_CASE("cache keys, dimensions and persistence") {
  EmbeddingCache cache;
  const auto k1 = EmbeddingCache::key("m", "ab", "c");
  CHECK(k1 != EmbeddingCache::key("m", "a", "bc"));
  CHECK(k1 != EmbeddingCache::key("m2", "ab", "c"));
  cache.put(k1, "m", {1, 2, 3});
  CHECK(cache.get(k1) == std::vector<float>{1, 2, 3});
  CHECK(!cache.get("missing"));
  CHECK_THROWS_AS(cache.put(EmbeddingCache::key("m", "x", ""), "m", {1, 2}), ProviderMismatch);
  cache.put(EmbeddingCache::key("other", "x", ""), "other", {1, 2});

  const auto path = fs::temp_directory_path() / ("taxo-emb-cache-" + std::to_string(::getpid()) + ".jsonl");
  cache.save(path);
  EmbeddingCache loaded;
  loaded.load(path);
  CHECK(loaded.size() == 2);
  CHECK(loaded.get(k1) == std::vector<float>{1, 2, 3});
  EmbeddingCache none;
  none.load(path.string() + ".absent");
  CHECK(none.size() == 0);
  fs::remove(path);
}

TEST_CASE("client batches, dedupes and caches") {
  auto provider = std::make_shared<test::LookupEmbeddingProvider>();
  auto cache = std::make_shared<EmbeddingCache>();
  EmbeddingClient::Options o;
  o.batch_size = 4;
  o.max_in_flight = 3;
  EmbeddingClient client(provider, cache, o);
  std::vector<std::pair<std::string, std::string>> items;
  for (int i = 0; i < 10; ++i) items.emplace_back("t" + std::to_string(i % 7), "d");
  const auto v = client.embed_many(items);
  CHECK(v.size() == 10);
  CHECK(v[0] == v[7]);
  CHECK(client.provider_texts() == 7);
  CHECK(provider->calls() == 2);  // 7 unique texts in batches of 4
  client.embed_many(items);
  CHECK(client.provider_texts() == 7);
  CHECK(cache->size() == 7);
  CHECK(client.embed_text("t1", "d") == v[1]);
  CHECK_THROWS_AS(client.embed_text("", "d"), InvalidConfig);
}

TEST_CASE("client retries transient provider failures") {
  std::vector<std::chrono::milliseconds> sleeps;
  EmbeddingClient::Options o;
  o.sleeper = [&](std::chrono::milliseconds d) { sleeps.push_back(d); };
  o.max_in_flight = 1;
  EmbeddingClient ok(std::make_shared<FlakyProvider>(2), std::make_shared<EmbeddingCache>(), o);
  CHECK(ok.embed_text("a", "").dim() == 2);
  CHECK(sleeps.size() == 2);
  CHECK(sleeps[1] > sleeps[0]);
  EmbeddingClient bad(std::make_shared<FlakyProvider>(10), std::make_shared<EmbeddingCache>(), o);
  CHECK_THROWS_AS(bad.embed_text("a", ""), EmbeddingServiceUnavailable);
}

TEST_CASE("rank_by_score breaks ties by id") {
  const std::vector<double> s{0.5, 0.9, 0.5, 0.9};
  const std::vector<EntityId> ids{EntityId("d"), EntityId("c"), EntityId("a"), EntityId("b")};
  CHECK(rank_by_score(s, ids) == std::vector<std::size_t>{3, 1, 2, 0});
}

TEST_CASE("filter_top_k and select_demonstrations against brute force") {
  auto provider = std::make_shared<test::LookupEmbeddingProvider>(8);
  EmbeddingClient client(provider, std::make_shared<EmbeddingCache>());
  const auto ents = make_entities(30);
  Entity root{EntityId("root"), "root", "", std::nullopt, {}};
  auto cands = ptrs(ents);
  cands.push_back(&root);
  const Entity q{EntityId("q"), "query", "the query", std::nullopt, {}};

  const auto r = filter_top_k(client, q, cands, 10);
  CHECK(r.selected.size() == 10);
  CHECK(r.scores.size() == 31);
  std::vector<std::pair<double, EntityId>> brute;
  for (const auto& [id, s] : r.scores) brute.emplace_back(-s, id);
  std::sort(brute.begin(), brute.end());
  for (std::size_t i = 0; i < 10; ++i) CHECK(r.selected[i] == brute[i].second);
  CHECK(filter_top_k(client, q, cands, 100).selected.size() == 31);
  CHECK_THROWS_AS(filter_top_k(client, q, cands, 0), InvalidConfig);
  CHECK_THROWS_AS(filter_top_k(client, q, {}, 3), InvalidConfig);

  const auto d5 = select_demonstrations(client, q, cands, 5);
  const auto d6 = select_demonstrations(client, q, cands, 6);
  REQUIRE(d5.size() == 5);
  CHECK(std::equal(d5.begin(), d5.end(), d6.begin()));
  for (const auto& id : select_demonstrations(client, q, cands, 31)) CHECK(id != EntityId("root"));
}

TEST_CASE("http provider speaks the sidecar contract") {
  FakeSidecar sidecar;
  HttpEmbeddingProvider p(sidecar.url() + "/");
  CHECK(p.healthy());
  CHECK(p.model_tag() == "fake-encoder");
  const auto v = p.embed({"a", "abc"});
  REQUIRE(v.size() == 2);
  CHECK(v[0][0] == 1.0f);
  CHECK(v[1][0] == 3.0f);  // order preserved

  EmbeddingClient client(std::make_shared<HttpEmbeddingProvider>(sidecar.url()), std::make_shared<EmbeddingCache>());
  CHECK(client.model_tag() == "fake-encoder");
  const auto e1 = client.embed_text("same", "text");
  const auto e2 = client.embed_text("same", "text");
  CHECK(cosine_similarity(e1, e2) == doctest::Approx(1.0).epsilon(1e-6));

  sidecar.healthy_ = false;
  CHECK(!p.healthy());

  sidecar.fail_status_ = 503;
  CHECK_THROWS_AS(p.embed({"x"}), EmbeddingServiceUnavailable);
  sidecar.fail_status_ = 400;
  CHECK_THROWS_AS(p.embed({"x"}), DataError);
  sidecar.fail_status_ = 0;

  sidecar.extra_vectors_ = 1;
  CHECK_THROWS_AS(p.embed({"x"}), ProviderMismatch);
  sidecar.extra_vectors_ = 0;
  sidecar.dim_ = 4;
  CHECK_THROWS_AS(p.embed({"x"}), ProviderMismatch);
  sidecar.dim_ = 3;
  sidecar.model_ = "other-encoder";
  CHECK_THROWS_AS(p.embed({"x"}), ProviderMismatch);
}

TEST_CASE("http provider reports an absent service") {
  HttpEmbeddingProvider::Options o;
  o.connect_timeout_s = 0.5;
  HttpEmbeddingProvider p("http://127.0.0.1:9", "tag", o);
  CHECK(!p.healthy());
  CHECK_THROWS_AS(p.embed({"x"}), EmbeddingServiceUnavailable);
}
