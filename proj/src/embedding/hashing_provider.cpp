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

#include <cctype>
#include <cmath>
#include <cstdint>

#include "taxo/core/errors.hpp"
#include "taxo/embedding/provider.hpp"

namespace taxo {
namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t salt) {
  std::uint64_t h = 1469598103934665603ULL ^ salt;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

HashingEmbeddingProvider::HashingEmbeddingProvider(std::size_t dim) : dim_(dim) {
  if (dim_ < 8) throw InvalidConfig("hashing embedder needs at least 8 dimensions");
}

std::string HashingEmbeddingProvider::model_tag() {
  return "hashing-v1-" + std::to_string(dim_);
}

std::vector<float> HashingEmbeddingProvider::embed_one(const std::string& text) const {
  std::vector<double> acc(dim_, 0.0);
  auto add = [&](std::string_view feature, std::uint64_t salt, double weight) {
    const std::uint64_t h = fnv1a(feature, salt);
    const double sign = (h >> 63) ? -1.0 : 1.0;
    acc[h % dim_] += sign * weight;
  };

  // Lowercased ASCII words; bytes >= 0x80 count as word characters so UTF-8
  // terms still produce features.
  std::vector<std::string> words;
  std::string cur;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c >= 0x80) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      words.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));

  for (const auto& w : words) {
    add(w, 0, 1.0);
    const std::string padded = " " + w + " ";
    for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
      add(std::string_view(padded).substr(i, 3), 1, 0.5);
    }
  }

  double norm = 0;
  for (double v : acc) norm += v * v;
  std::vector<float> out(dim_, 0.0f);
  if (norm == 0) {
    // No word characters at all: a single deterministic component.
    out[fnv1a(text, 2) % dim_] = 1.0f;
    return out;
  }
  norm = std::sqrt(norm);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = static_cast<float>(acc[i] / norm);
  return out;
}

std::vector<std::vector<float>> HashingEmbeddingProvider::embed(const std::vector<std::string>& texts) {
  std::vector<std::vector<float>> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(embed_one(t));
  return out;
}

}  // namespace taxo
