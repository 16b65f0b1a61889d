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

#include "taxo/embedding/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "taxo/core/errors.hpp"

namespace taxo {

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim() || a.model_tag != b.model_tag) {
    throw ProviderMismatch("cannot compare " + a.model_tag + "/" + std::to_string(a.dim()) +
                           " with " + b.model_tag + "/" + std::to_string(b.dim()));
  }
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += static_cast<double>(a.values[i]) * b.values[i];
    na += static_cast<double>(a.values[i]) * a.values[i];
    nb += static_cast<double>(b.values[i]) * b.values[i];
  }
  if (na == 0 || nb == 0) throw DataError("cosine of a zero vector");
  const double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, -1.0, 1.0);
}

void check_embedding(const std::vector<float>& values) {
  if (values.empty()) throw DataError("empty embedding");
  bool nonzero = false;
  for (float v : values) {
    if (!std::isfinite(v)) throw DataError("non-finite embedding component");
    nonzero = nonzero || v != 0.0f;
  }
  if (!nonzero) throw DataError("zero embedding");
}

std::string embedding_text(std::string_view term, std::string_view definition) {
  std::string out(term);
  if (!definition.empty()) {
    out += ' ';
    out += definition;
  }
  return out;
}

std::size_t filter_k(double ratio, std::size_t entity_count) {
  const auto k = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(entity_count) - 1e-9));
  return std::max<std::size_t>(1, k);
}

}  // namespace taxo
