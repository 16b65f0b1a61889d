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
#include <vector>

#include "taxo/embedding/embedding.hpp"
#include "taxo/parser/completion_parser.hpp"
#include "taxo/taxonomy/taxonomy.hpp"

namespace taxo {

// 2 * depth(lca) / (depth(p) + depth(g)), root depth 1. Throws UnknownEntity.
double wu_palmer(const Taxonomy& t, const EntityId& predicted, const EntityId& gold);

// The same score between the two positions the query would take: children
// of `predicted` and of `gold`. 1 when they coincide.
double wu_palmer_attached(const Taxonomy& t, const EntityId& predicted, const EntityId& gold);

// Fraction of predictions with status ok and anchor == gold. Throws
// InvalidConfig on length mismatch. 0 for empty input.
double accuracy(const std::vector<Prediction>& predictions, const std::vector<EntityId>& golds);

// Fraction of queries whose gold parent is among the first K selected ids.
// Throws InvalidConfig for K < 1 or length mismatch.
double hit_at_k(const std::vector<FilterResult>& results, const std::vector<EntityId>& golds, std::size_t k);

// 1-based position of `gold` in a full similarity ranking; 0 when absent.
std::size_t rank_of(const std::vector<EntityId>& ranking, const EntityId& gold);

// Hit@K from 1-based gold ranks (0 = never retrieved).
double hit_at_k_from_ranks(const std::vector<std::size_t>& ranks, std::size_t k);

}  // namespace taxo
