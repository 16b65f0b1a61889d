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

#include "taxo/embedding/embedding_client.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <semaphore>
#include <thread>
#include <unordered_map>

#include "taxo/core/errors.hpp"

namespace taxo {

EmbeddingClient::EmbeddingClient(std::shared_ptr<EmbeddingProvider> provider,
                                 std::shared_ptr<EmbeddingCache> cache)
    : EmbeddingClient(std::move(provider), std::move(cache), Options{}) {}

EmbeddingClient::EmbeddingClient(std::shared_ptr<EmbeddingProvider> provider,
                                 std::shared_ptr<EmbeddingCache> cache, Options options)
    : provider_(std::move(provider)), cache_(std::move(cache)), options_(std::move(options)) {
  if (!provider_) throw InvalidConfig("embedding client needs a provider");
  if (!cache_) cache_ = std::make_shared<EmbeddingCache>();
  if (options_.batch_size == 0 || options_.max_in_flight == 0 || options_.max_attempts < 1) {
    throw InvalidConfig("embedding client limits must be positive");
  }
  if (!options_.sleeper) {
    options_.sleeper = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
  model_tag_ = provider_->model_tag();
}

std::vector<std::vector<float>> EmbeddingClient::call_provider(const std::vector<std::string>& texts) {
  auto delay = options_.retry_base;
  for (int attempt = 1;; ++attempt) {
    try {
      auto out = provider_->embed(texts);
      if (out.size() != texts.size()) {
        throw ProviderMismatch("provider returned " + std::to_string(out.size()) +
                               " vectors for " + std::to_string(texts.size()) + " texts");
      }
      for (const auto& v : out) check_embedding(v);
      provider_texts_ += texts.size();
      return out;
    } catch (const EmbeddingServiceUnavailable&) {
      if (attempt >= options_.max_attempts) throw;
      options_.sleeper(delay);
      delay *= 2;
    }
  }
}

EmbeddingVector EmbeddingClient::embed_text(const std::string& term, const std::string& definition) {
  return embed_many({{term, definition}}).front();
}

std::vector<EmbeddingVector> EmbeddingClient::embed_many(
    const std::vector<std::pair<std::string, std::string>>& items) {
  std::vector<std::string> keys(items.size());
  // Distinct uncached keys, each with the text to send.
  std::vector<std::string> pending_keys;
  std::vector<std::string> pending_texts;
  std::unordered_map<std::string, std::size_t> pending_index;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& [term, def] = items[i];
    if (term.empty()) throw InvalidConfig("cannot embed an empty term");
    keys[i] = EmbeddingCache::key(model_tag_, term, def);
    if (cache_->get(keys[i]) || pending_index.contains(keys[i])) continue;
    pending_index.emplace(keys[i], pending_keys.size());
    pending_keys.push_back(keys[i]);
    pending_texts.push_back(embedding_text(term, def));
  }

  if (!pending_texts.empty()) {
    const std::size_t batches = (pending_texts.size() + options_.batch_size - 1) / options_.batch_size;
    std::vector<std::exception_ptr> errors(batches);
    auto run_batch = [&](std::size_t b) {
      try {
        const std::size_t lo = b * options_.batch_size;
        const std::size_t hi = std::min(pending_texts.size(), lo + options_.batch_size);
        std::vector<std::string> texts(pending_texts.begin() + lo, pending_texts.begin() + hi);
        auto vectors = call_provider(texts);
        for (std::size_t i = lo; i < hi; ++i) {
          cache_->put(pending_keys[i], model_tag_, std::move(vectors[i - lo]));
        }
      } catch (...) {
        errors[b] = std::current_exception();
      }
    };
    if (batches == 1) {
      run_batch(0);
    } else {
      std::counting_semaphore<> slots(static_cast<std::ptrdiff_t>(options_.max_in_flight));
      std::vector<std::jthread> workers;
      workers.reserve(batches);
      for (std::size_t b = 0; b < batches; ++b) {
        slots.acquire();
        workers.emplace_back([&, b] {
          run_batch(b);
          slots.release();
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<EmbeddingVector> out;
  out.reserve(items.size());
  for (const auto& k : keys) {
    auto v = cache_->get(k);
    if (!v) throw EmbeddingServiceUnavailable("embedding missing after fetch");
    out.push_back(EmbeddingVector{std::move(*v), model_tag_});
  }
  return out;
}

std::vector<EmbeddingVector> EmbeddingClient::embed_entities(
    const std::vector<const Entity*>& entities, bool with_definitions) {
  std::vector<std::pair<std::string, std::string>> items;
  items.reserve(entities.size());
  for (const Entity* e : entities) {
    items.emplace_back(e->term, with_definitions ? e->definition : std::string());
  }
  return embed_many(items);
}

std::vector<std::size_t> rank_by_score(const std::vector<double>& scores,
                                       const std::vector<EntityId>& ids) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return ids[a] < ids[b];
  });
  return order;
}

CandidateSet embed_candidates(EmbeddingClient& client, const std::vector<const Entity*>& candidates,
                              bool with_definitions) {
  CandidateSet set;
  set.entities = candidates;
  set.vectors = client.embed_entities(candidates, with_definitions);
  set.squared_norms.reserve(set.vectors.size());
  for (const auto& v : set.vectors) {
    double n = 0;
    for (float x : v.values) n += static_cast<double>(x) * x;
    set.squared_norms.push_back(n);
  }
  return set;
}

std::vector<double> candidate_scores(const EmbeddingVector& query, const CandidateSet& candidates) {
  std::vector<double> scores(candidates.entities.size());
  if (candidates.squared_norms.size() != scores.size()) {
    for (std::size_t i = 0; i < scores.size(); ++i) scores[i] = cosine_similarity(query, candidates.vectors[i]);
    return scores;
  }
  // Same arithmetic as cosine_similarity, with the candidate norms hoisted.
  double qn = 0;
  for (float x : query.values) qn += static_cast<double>(x) * x;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const auto& v = candidates.vectors[i];
    if (v.dim() != query.dim() || v.model_tag != query.model_tag) {
      scores[i] = cosine_similarity(query, v);  // throws ProviderMismatch
      continue;
    }
    double dot = 0;
    for (std::size_t d = 0; d < v.dim(); ++d) dot += static_cast<double>(query.values[d]) * v.values[d];
    if (qn == 0 || candidates.squared_norms[i] == 0) throw DataError("cosine of a zero vector");
    scores[i] = std::clamp(dot / (std::sqrt(qn) * std::sqrt(candidates.squared_norms[i])), -1.0, 1.0);
  }
  return scores;
}

FilterResult filter_top_k(const CandidateSet& candidates, const std::vector<double>& scores, std::size_t k) {
  if (k < 1) throw InvalidConfig("filter k must be at least 1");
  if (candidates.entities.empty()) throw InvalidConfig("filter needs at least one candidate");
  const std::size_t n = candidates.entities.size();
  std::vector<EntityId> ids;
  ids.reserve(n);
  for (const Entity* e : candidates.entities) ids.push_back(e->id);
  const auto order = rank_by_score(scores, ids);

  FilterResult result;
  result.k = k;
  for (std::size_t i = 0; i < n; ++i) result.scores.emplace(ids[i], scores[i]);
  const std::size_t take = std::min(k, order.size());
  result.selected.reserve(take);
  for (std::size_t i = 0; i < take; ++i) result.selected.push_back(ids[order[i]]);
  return result;
}

std::vector<EntityId> select_demonstrations(const CandidateSet& candidates, const std::vector<double>& scores,
                                            const EntityId& query_id, std::size_t n) {
  if (n < 1) throw InvalidConfig("demonstration count must be at least 1");
  std::vector<double> kept;
  std::vector<EntityId> ids;
  for (std::size_t i = 0; i < candidates.entities.size(); ++i) {
    const Entity* e = candidates.entities[i];
    if (!e->parent || e->id == query_id) continue;
    kept.push_back(scores[i]);
    ids.push_back(e->id);
  }
  const auto order = rank_by_score(kept, ids);
  std::vector<EntityId> out;
  for (std::size_t i = 0; i < std::min(n, order.size()); ++i) out.push_back(ids[order[i]]);
  return out;
}

FilterResult filter_top_k(const EmbeddingVector& query, const CandidateSet& candidates, std::size_t k) {
  return filter_top_k(candidates, candidate_scores(query, candidates), k);
}

std::vector<EntityId> select_demonstrations(const EmbeddingVector& query, const EntityId& query_id,
                                            const CandidateSet& candidates, std::size_t n) {
  return select_demonstrations(candidates, candidate_scores(query, candidates), query_id, n);
}

FilterResult filter_top_k(EmbeddingClient& client, const Entity& query,
                          const std::vector<const Entity*>& candidates, std::size_t k,
                          bool with_definitions) {
  if (k < 1) throw InvalidConfig("filter k must be at least 1");
  if (candidates.empty()) throw InvalidConfig("filter needs at least one candidate");
  const auto q = client.embed_entities({&query}, with_definitions).front();
  return filter_top_k(q, embed_candidates(client, candidates, with_definitions), k);
}

std::vector<EntityId> select_demonstrations(EmbeddingClient& client, const Entity& query,
                                            const std::vector<const Entity*>& candidates,
                                            std::size_t n, bool with_definitions) {
  if (n < 1) throw InvalidConfig("demonstration count must be at least 1");
  std::vector<const Entity*> eligible;
  for (const Entity* e : candidates) {
    if (e->parent && e->id != query.id) eligible.push_back(e);
  }
  if (eligible.empty()) return {};
  const auto q = client.embed_entities({&query}, with_definitions).front();
  return select_demonstrations(q, query.id, embed_candidates(client, eligible, with_definitions), n);
}

}  // namespace taxo
