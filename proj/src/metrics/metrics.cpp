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

#include "taxo/metrics/metrics.hpp"

#include <algorithm>

#include "taxo/core/errors.hpp"

namespace taxo {

double wu_palmer(const Taxonomy& t, const EntityId& predicted, const EntityId& gold) {
  const int dp = t.depth(predicted);
  const int dg = t.depth(gold);
  const int dl = t.depth(t.lca(predicted, gold));
  return 2.0 * dl / (dp + dg);
}

double wu_palmer_attached(const Taxonomy& t, const EntityId& predicted, const EntityId& gold) {
  if (predicted == gold) {
    (void)t.depth(gold);  // validates the id
    return 1.0;
  }
  const int dl = t.depth(t.lca(predicted, gold));
  return 2.0 * dl / (t.depth(predicted) + t.depth(gold) + 2);
}

double accuracy(const std::vector<Prediction>& predictions, const std::vector<EntityId>& golds) {
  if (predictions.size() != golds.size()) throw InvalidConfig("accuracy: predictions and golds differ in length");
  if (predictions.empty()) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const auto& p = predictions[i];
    if (p.status == ParseStatus::ok && p.anchor && *p.anchor == golds[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(predictions.size());
}

double hit_at_k(const std::vector<FilterResult>& results, const std::vector<EntityId>& golds, std::size_t k) {
  if (k < 1) throw InvalidConfig("Hit@K needs K >= 1");
  if (results.size() != golds.size()) throw InvalidConfig("Hit@K: results and golds differ in length");
  if (results.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& sel = results[i].selected;
    const auto end = sel.begin() + static_cast<std::ptrdiff_t>(std::min(k, sel.size()));
    if (std::find(sel.begin(), end, golds[i]) != end) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(results.size());
}

std::size_t rank_of(const std::vector<EntityId>& ranking, const EntityId& gold) {
  auto it = std::find(ranking.begin(), ranking.end(), gold);
  return it == ranking.end() ? 0 : static_cast<std::size_t>(it - ranking.begin()) + 1;
}

double hit_at_k_from_ranks(const std::vector<std::size_t>& ranks, std::size_t k) {
  if (k < 1) throw InvalidConfig("Hit@K needs K >= 1");
  if (ranks.empty()) return 0.0;
  const auto hits = std::count_if(ranks.begin(), ranks.end(), [k](std::size_t r) { return r >= 1 && r <= k; });
  return static_cast<double>(hits) / static_cast<double>(ranks.size());
}

}  // namespace taxo
