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

#include "taxo/taxonomy/split.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "taxo/core/errors.hpp"

namespace taxo {

std::size_t query_count(double fraction, std::size_t leaf_count) {
  // The epsilon keeps e.g. 0.2 * 10 from flooring to 1.
  const auto n = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(leaf_count) + 1e-9));
  return std::max<std::size_t>(1, n);
}

BenchmarkSplit split_leaves(const Taxonomy& t, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw InvalidConfig("split fraction must lie in (0, 1)");
  }
  auto leaves = t.leaves();
  if (leaves.empty()) throw InvalidConfig("taxonomy has no leaves to hold out");
  const std::size_t n = query_count(fraction, leaves.size());

  // Partial Fisher-Yates over the leaves sorted by id, so the sample does
  // not depend on file order.
  std::sort(leaves.begin(), leaves.end());
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = i + static_cast<std::size_t>(bounded_draw(rng, leaves.size() - i));
    std::swap(leaves[i], leaves[j]);
  }
  leaves.resize(n);

  std::unordered_map<EntityId, std::size_t> position;
  for (std::size_t i = 0; i < t.entities().size(); ++i) position[t.entities()[i].id] = i;
  std::sort(leaves.begin(), leaves.end(),
            [&](const EntityId& a, const EntityId& b) { return position[a] < position[b]; });

  BenchmarkSplit split{t.without_leaves(leaves), {}, seed};
  split.queries.reserve(n);
  for (const auto& id : leaves) {
    const auto& e = t.at(id);
    split.queries.push_back(QueryInstance{Entity{e.id, e.term, e.definition, std::nullopt, {}}, *e.parent});
  }
  return split;
}

Taxonomy reattach(const BenchmarkSplit& split) {
  Taxonomy t = split.seed_taxonomy;
  for (const auto& q : split.queries) t = t.attach(q.query, q.gold_parent);
  return t;
}

}  // namespace taxo
