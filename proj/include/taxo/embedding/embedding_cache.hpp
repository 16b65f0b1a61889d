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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace taxo {

// Content-addressed vector store keyed by sha256(model_tag, term,
// definition). Concurrent readers and writers are allowed; since values are
// deterministic per key, the last writer wins.
class EmbeddingCache {
 public:
  static std::string key(std::string_view model_tag, std::string_view term,
                         std::string_view definition);

  std::optional<std::vector<float>> get(const std::string& key) const;
  // Throws ProviderMismatch when the dimension differs from vectors already
  // stored for the same model tag.
  void put(const std::string& key, const std::string& model_tag, std::vector<float> values);
  std::size_t size() const;

  // JSON-lines with a versioned header line. Loading merges into the cache;
  // a missing file is not an error.
  void load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

 private:
  struct Slot {
    std::string model_tag;
    std::vector<float> values;
  };
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, Slot> entries_;
  std::unordered_map<std::string, std::size_t> dims_;  // model_tag -> dim
};

}  // namespace taxo
