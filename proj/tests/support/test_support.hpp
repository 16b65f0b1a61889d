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

// Shared helpers for the test binaries: fixture paths, brute-force
// reference implementations and deterministic embedding providers.
#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "taxo/core/paths.hpp"
#include "taxo/embedding/provider.hpp"
#include "taxo/taxonomy/canonical_io.hpp"
#include "taxo/taxonomy/split.hpp"
#include "taxo/taxonomy/taxonomy.hpp"

namespace taxo::test {

inline std::filesystem::path fixture(const std::string& rel) {
  return std::filesystem::path(TAXO_TEST_FIXTURES) / rel;
}

inline Taxonomy insanity() { return read_canonical(fixture("insanity.jsonl")); }

// The insanity fixture with Alzheimer's disease held out.
struct InsanityQuery {
  Taxonomy seed;
  Entity query;
};

inline InsanityQuery insanity_query() {
  const Taxonomy full = insanity();
  const EntityId q{"Alzheimer's disease"};
  Entity query = full.at(q);
  query.parent.reset();
  query.children.clear();
  return {full.without_leaves({q}), query};
}

// Ancestor chain from `id` up to the root, `id` first. Walks parent links
// only; no use of the precomputed depth table.
inline std::vector<EntityId> ancestors(const Taxonomy& t, const EntityId& id) {
  std::vector<EntityId> out{id};
  while (t.at(out.back()).parent) out.push_back(*t.at(out.back()).parent);
  return out;
}

inline int brute_depth(const Taxonomy& t, const EntityId& id) {
  return static_cast<int>(ancestors(t, id).size());
}

// Deepest common element of the two ancestor sets.
inline EntityId brute_lca(const Taxonomy& t, const EntityId& a, const EntityId& b) {
  const auto aa = ancestors(t, a);
  const auto bb = ancestors(t, b);
  const std::set<EntityId> bs(bb.begin(), bb.end());
  EntityId best;
  int best_depth = 0;
  for (const auto& x : aa) {
    if (bs.contains(x) && brute_depth(t, x) > best_depth) {
      best = x;
      best_depth = brute_depth(t, x);
    }
  }
  return best;
}

inline double brute_wu_palmer(const Taxonomy& t, const EntityId& p, const EntityId& g) {
  return 2.0 * brute_depth(t, brute_lca(t, p, g)) / (brute_depth(t, p) + brute_depth(t, g));
}

// Uniform random recursive tree: node i picks a parent among 0..i-1.
inline Taxonomy random_tree(std::mt19937_64& rng, std::size_t n) {
  std::vector<EntityRecord> records;
  for (std::size_t i = 0; i < n; ++i) {
    EntityRecord r;
    r.id = EntityId("n" + std::to_string(i));
    r.term = "node " + std::to_string(i);
    r.definition = i % 3 == 0 ? "" : "definition of node " + std::to_string(i);
    if (i > 0) r.parent = EntityId("n" + std::to_string(bounded_draw(rng, i)));
    records.push_back(std::move(r));
  }
  std::shuffle(records.begin() + 1, records.end(), rng);
  return Taxonomy::from_records(std::move(records));
}

// Returns the vector registered for a text; unknown texts get a
// deterministic pseudo-random unit vector. Counts calls.
class LookupEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit LookupEmbeddingProvider(std::size_t dim = 16, std::string tag = "lookup-test")
      : dim_(dim), tag_(std::move(tag)) {}
  void set(const std::string& text, std::vector<float> v) {
    std::lock_guard lock(mu_);
    table_[text] = std::move(v);
  }
  std::string model_tag() override { return tag_; }
  std::vector<std::vector<float>> embed(const std::vector<std::string>& texts) override {
    std::lock_guard lock(mu_);
    ++calls_;
    std::vector<std::vector<float>> out;
    for (const auto& t : texts) {
      auto it = table_.find(t);
      if (it != table_.end()) {
        out.push_back(it->second);
        continue;
      }
      std::seed_seq seq(t.begin(), t.end());
      std::mt19937 rng(seq);
      std::normal_distribution<float> nd;
      std::vector<float> v(dim_);
      for (auto& x : v) x = nd(rng);
      out.push_back(std::move(v));
    }
    return out;
  }
  std::size_t calls() const {
    std::lock_guard lock(mu_);
    return calls_;
  }

 private:
  std::size_t dim_;
  std::string tag_;
  mutable std::mutex mu_;
  std::map<std::string, std::vector<float>> table_;
  std::size_t calls_ = 0;
};

}  // namespace taxo::test
