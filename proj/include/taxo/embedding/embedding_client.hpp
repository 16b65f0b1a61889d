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

#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "taxo/embedding/embedding.hpp"
#include "taxo/embedding/embedding_cache.hpp"
#include "taxo/embedding/provider.hpp"
#include "taxo/taxonomy/taxonomy.hpp"

namespace taxo {

class EmbeddingClient {
 public:
  struct Options {
    std::size_t batch_size = 64;
    std::size_t max_in_flight = 8;
    int max_attempts = 3;
    std::chrono::milliseconds retry_base{200};
    std::function<void(std::chrono::milliseconds)> sleeper;  // defaults to sleep_for
  };

  EmbeddingClient(std::shared_ptr<EmbeddingProvider> provider,
                  std::shared_ptr<EmbeddingCache> cache);
  EmbeddingClient(std::shared_ptr<EmbeddingProvider> provider,
                  std::shared_ptr<EmbeddingCache> cache, Options options);

  const std::string& model_tag() const noexcept { return model_tag_; }
  EmbeddingCache& cache() noexcept { return *cache_; }

  // Throws InvalidConfig for an empty term.
  EmbeddingVector embed_text(const std::string& term, const std::string& definition);

  // Embeds (term, definition) pairs; uncached texts go to the provider in
  // batches, several batches in flight at once.
  std::vector<EmbeddingVector> embed_many(
      const std::vector<std::pair<std::string, std::string>>& items);

  std::vector<EmbeddingVector> embed_entities(const std::vector<const Entity*>& entities,
                                              bool with_definitions);

  // Number of texts actually sent to the provider so far.
  std::size_t provider_texts() const noexcept { return provider_texts_; }

 private:
  std::vector<std::vector<float>> call_provider(const std::vector<std::string>& texts);

  std::shared_ptr<EmbeddingProvider> provider_;
  std::shared_ptr<EmbeddingCache> cache_;
  Options options_;
  std::string model_tag_;
  std::atomic<std::size_t> provider_texts_{0};
};

// Ranks candidates by cosine against the query, descending, ties by
// ascending id, and keeps the first min(k, n). Throws InvalidConfig for
// k < 1 or no candidates.
FilterResult filter_top_k(EmbeddingClient& client, const Entity& query,
                          const std::vector<const Entity*>& candidates, std::size_t k,
                          bool with_definitions = true);

// Same ranking over candidates that have a parent (the root is skipped),
// first n. Throws InvalidConfig for n < 1.
std::vector<EntityId> select_demonstrations(EmbeddingClient& client, const Entity& query,
                                            const std::vector<const Entity*>& candidates,
                                            std::size_t n = 5, bool with_definitions = true);

// Candidates embedded once and reused across queries.
struct CandidateSet {
  std::vector<const Entity*> entities;
  std::vector<EmbeddingVector> vectors;  // parallel to entities
  std::vector<double> squared_norms;     // parallel to entities; filled by embed_candidates
};
CandidateSet embed_candidates(EmbeddingClient& client, const std::vector<const Entity*>& candidates,
                              bool with_definitions);
FilterResult filter_top_k(const EmbeddingVector& query, const CandidateSet& candidates, std::size_t k);
std::vector<EntityId> select_demonstrations(const EmbeddingVector& query, const EntityId& query_id,
                                            const CandidateSet& candidates, std::size_t n);
// Cosine of the query against every candidate, parallel to candidates.entities.
// The overloads below reuse one score vector for the filter and the demos.
std::vector<double> candidate_scores(const EmbeddingVector& query, const CandidateSet& candidates);
FilterResult filter_top_k(const CandidateSet& candidates, const std::vector<double>& scores, std::size_t k);
std::vector<EntityId> select_demonstrations(const CandidateSet& candidates, const std::vector<double>& scores,
                                            const EntityId& query_id, std::size_t n);

// Pure ranking step shared by the filter and demonstration selection.
std::vector<std::size_t> rank_by_score(const std::vector<double>& scores,
                                       const std::vector<EntityId>& ids);

}  // namespace taxo
