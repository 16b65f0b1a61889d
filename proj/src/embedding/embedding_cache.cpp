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

#include "taxo/embedding/embedding_cache.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>

#include "json.hpp"
#include "taxo/core/errors.hpp"
#include "taxo/core/hashing.hpp"
#include "taxo/core/paths.hpp"

namespace taxo {
namespace {

constexpr const char* kFormat = "taxo-embedding-cache";
constexpr int kVersion = 1;

}  // namespace

std::string EmbeddingCache::key(std::string_view model_tag, std::string_view term,
                                std::string_view definition) {
  // Length-prefixed so that no two triples share a preimage.
  std::string buf;
  for (auto part : {model_tag, term, definition}) {
    buf += std::to_string(part.size());
    buf += ':';
    buf += part;
  }
  return sha256_hex(buf);
}

std::optional<std::vector<float>> EmbeddingCache::get(const std::string& key) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.values;
}

void EmbeddingCache::put(const std::string& key, const std::string& model_tag,
                         std::vector<float> values) {
  std::unique_lock lock(mu_);
  auto [dim, fresh] = dims_.emplace(model_tag, values.size());
  if (!fresh && dim->second != values.size()) {
    throw ProviderMismatch("model " + model_tag + " returned dimension " +
                           std::to_string(values.size()) + ", cache holds " +
                           std::to_string(dim->second));
  }
  entries_[key] = Slot{model_tag, std::move(values)};
}

std::size_t EmbeddingCache::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

void EmbeddingCache::load(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return;
  std::ifstream in(path);
  std::string line;
  if (!std::getline(in, line)) return;
  try {
    auto header = nlohmann::json::parse(line);
    if (header.value("format", "") != kFormat || header.value("version", 0) != kVersion) {
      throw DataError(path.string() + ": unsupported embedding cache format");
    }
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto j = nlohmann::json::parse(line);
      auto values = j.at("vector").get<std::vector<float>>();
      put(j.at("key").get<std::string>(), j.at("model").get<std::string>(), std::move(values));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void EmbeddingCache::save(const std::filesystem::path& path) const {
  std::string out;
  {
    std::shared_lock lock(mu_);
    out = nlohmann::json{{"format", kFormat}, {"version", kVersion}}.dump() + "\n";
    // Sorted so repeated saves of the same content are byte-identical.
    std::vector<const std::pair<const std::string, Slot>*> rows;
    rows.reserve(entries_.size());
    for (const auto& kv : entries_) rows.push_back(&kv);
    std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->first < b->first; });
    for (const auto* kv : rows) {
      nlohmann::ordered_json j;
      j["key"] = kv->first;
      j["model"] = kv->second.model_tag;
      j["vector"] = kv->second.values;
      out += j.dump();
      out += '\n';
    }
  }
  write_file_atomically(path, out);
}

}  // namespace taxo
