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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "taxo/core/entity_id.hpp"

namespace taxo {

struct EmbeddingVector {
  std::vector<float> values;
  std::string model_tag;

  std::size_t dim() const noexcept { return values.size(); }
  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;
};

// dot(a, b) / (|a| |b|), accumulated in double. Throws ProviderMismatch when
// dimensions or model tags differ.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

// Throws DataError for empty or all-zero vectors, or non-finite components.
void check_embedding(const std::vector<float>& values);

// The text sent to the encoder for an entity. An empty definition yields the
// bare term.
std::string embedding_text(std::string_view term, std::string_view definition);

struct FilterResult {
  std::vector<EntityId> selected;  // descending similarity, ties by id
  std::size_t k = 0;
  std::map<EntityId, double> scores;  // every candidate, selected or not
};

// ceil(ratio * n), at least 1.
std::size_t filter_k(double ratio, std::size_t entity_count);

}  // namespace taxo
