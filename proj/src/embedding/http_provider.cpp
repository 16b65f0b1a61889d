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


#include "httplib.h"
#include "json.hpp"
#include "taxo/core/errors.hpp"
#include "taxo/embedding/provider.hpp"

namespace taxo {
namespace {

std::unique_ptr<httplib::Client> make_client(const std::string& base_url,
                                             const HttpEmbeddingProvider::Options& o) {
  auto client = std::make_unique<httplib::Client>(base_url);
  if (!client->is_valid()) throw InvalidConfig("invalid embedding service URL '" + base_url + "'");
  client->set_connection_timeout(std::chrono::duration<double>(o.connect_timeout_s));
  client->set_read_timeout(std::chrono::duration<double>(o.read_timeout_s));
  return client;
}

}  // namespace

HttpEmbeddingProvider::HttpEmbeddingProvider(std::string base_url, std::string model_tag)
    : HttpEmbeddingProvider(std::move(base_url), std::move(model_tag), Options{}) {}

HttpEmbeddingProvider::HttpEmbeddingProvider(std::string base_url, std::string model_tag,
                                             Options options)
    : base_url_(std::move(base_url)), model_tag_(std::move(model_tag)), options_(options) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

bool HttpEmbeddingProvider::healthy() {
  auto client = make_client(base_url_, options_);
  auto res = client->Get("/health");
  return res && res->status == 200;
}

std::string HttpEmbeddingProvider::model_tag() {
  if (model_tag_.empty()) model_tag_ = post_embed({"probe"}).model;
  return model_tag_;
}

HttpEmbeddingProvider::Reply HttpEmbeddingProvider::post_embed(const std::vector<std::string>& texts) {
  auto client = make_client(base_url_, options_);
  const std::string body = nlohmann::json{{"texts", texts}}.dump();
  auto res = client->Post("/embed", body, "application/json");
  if (!res) {
    throw EmbeddingServiceUnavailable("embedding service " + base_url_ + ": " +
                                      httplib::to_string(res.error()));
  }
  if (res->status >= 500 || res->status == 429) {
    throw EmbeddingServiceUnavailable("embedding service returned HTTP " + std::to_string(res->status));
  }
  if (res->status != 200) {
    throw DataError("embedding service rejected request: HTTP " + std::to_string(res->status) + " " +
                    res->body.substr(0, 200));
  }
  Reply reply;
  try {
    auto j = nlohmann::json::parse(res->body);
    reply.model = j.at("model").get<std::string>();
    const auto dim = j.at("dim").get<std::size_t>();
    reply.vectors = j.at("vectors").get<std::vector<std::vector<float>>>();
    for (const auto& v : reply.vectors) {
      if (v.size() != dim) {
        throw ProviderMismatch("embedding service advertised dim " + std::to_string(dim) +
                               " but sent " + std::to_string(v.size()));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ProviderMismatch(std::string("malformed /embed response: ") + e.what());
  }
  if (reply.vectors.size() != texts.size()) {
    throw ProviderMismatch("embedding service returned " + std::to_string(reply.vectors.size()) +
                           " vectors for " + std::to_string(texts.size()) + " texts");
  }
  return reply;
}

std::vector<std::vector<float>> HttpEmbeddingProvider::embed(const std::vector<std::string>& texts) {
  auto reply = post_embed(texts);
  if (!model_tag_.empty() && reply.model != model_tag_) {
    throw ProviderMismatch("embedding service switched model from " + model_tag_ + " to " + reply.model);
  }
  return std::move(reply.vectors);
}

}  // namespace taxo
