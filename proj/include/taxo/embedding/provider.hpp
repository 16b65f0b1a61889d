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

#include <string>
#include <vector>

namespace taxo {

// Source of sentence vectors. Implementations must be thread-safe and
// return one vector per text, in input order.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  // Identifies the encoder; part of every cache key.
  virtual std::string model_tag() = 0;
  virtual std::vector<std::vector<float>> embed(const std::vector<std::string>& texts) = 0;
  virtual bool healthy() { return true; }
};

// Deterministic bag of hashed words and character trigrams, L2-normalized.
// Lexical overlap only; stands in for a sentence encoder when no sidecar is
// running.
class HashingEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit HashingEmbeddingProvider(std::size_t dim = 512);

  std::string model_tag() override;
  std::vector<std::vector<float>> embed(const std::vector<std::string>& texts) override;

  std::vector<float> embed_one(const std::string& text) const;

 private:
  std::size_t dim_;
};

// Client side of the sidecar contract:
//   POST /embed {"texts": [...]} -> {"model": s, "dim": n, "vectors": [[...], ...]}
//   GET /health -> 200
class HttpEmbeddingProvider final : public EmbeddingProvider {
 public:
  struct Options {
    double connect_timeout_s = 5.0;
    double read_timeout_s = 120.0;
  };

  // `base_url` like "http://127.0.0.1:8001". When `model_tag` is empty the
  // tag is taken from the service's first /embed response.
  explicit HttpEmbeddingProvider(std::string base_url, std::string model_tag = "");
  HttpEmbeddingProvider(std::string base_url, std::string model_tag, Options options);

  std::string model_tag() override;
  std::vector<std::vector<float>> embed(const std::vector<std::string>& texts) override;
  bool healthy() override;

 private:
  struct Reply {
    std::string model;
    std::vector<std::vector<float>> vectors;
  };
  Reply post_embed(const std::vector<std::string>& texts);

  std::string base_url_;
  std::string model_tag_;
  Options options_;
};

}  // namespace taxo
