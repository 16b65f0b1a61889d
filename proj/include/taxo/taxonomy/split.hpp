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

#include <cstdint>
#include <vector>

#include "taxo/taxonomy/taxonomy.hpp"

namespace taxo {

struct QueryInstance {
  Entity query;  // parent absent, children empty
  EntityId gold_parent;
};

struct BenchmarkSplit {
  Taxonomy seed_taxonomy;
  std::vector<QueryInstance> queries;  // in original entity order
  std::uint64_t seed = 0;
};

// Number of held-out leaves for `leaf_count` leaves: floor(fraction * n),
// but at least one.
std::size_t query_count(double fraction, std::size_t leaf_count);

// Holds out a uniform sample of leaves. Deterministic for a fixed seed.
// Throws InvalidConfig when fraction is outside (0, 1) or there are no leaves.
BenchmarkSplit split_leaves(const Taxonomy& t, double fraction, std::uint64_t seed);

// Attaches every query at its gold parent.
Taxonomy reattach(const BenchmarkSplit& split);

// Uniform integer in [0, bound) from a 64-bit engine, by rejection. Used
// instead of std::uniform_int_distribution so draws match across standard
// libraries.
template <typename Engine>
std::uint64_t bounded_draw(Engine& engine, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = engine();
  } while (x >= limit);
  return x % bound;
}

}  // namespace taxo
