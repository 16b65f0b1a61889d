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

#include "taxo/taxonomy/taxonomy.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "taxo/core/errors.hpp"

namespace taxo {

Taxonomy Taxonomy::from_records(std::vector<EntityRecord> records) {
  Taxonomy t;
  const std::size_t n = records.size();
  if (n == 0) throw MalformedTaxonomy("taxonomy has no entities");
  t.entities_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = records[i];
    if (r.id.empty()) throw MalformedTaxonomy("entity with empty id");
    if (!t.index_.emplace(r.id, i).second) {
      throw MalformedTaxonomy("duplicate entity id '" + r.id.str() + "'");
    }
    t.entities_.push_back(Entity{std::move(r.id), std::move(r.term), std::move(r.definition),
                                 std::move(r.parent), {}});
  }

  t.parent_.assign(n, 0);
  std::size_t roots = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = t.entities_[i];
    if (!e.parent) {
      ++roots;
      t.root_ = i;
      t.parent_[i] = i;
      continue;
    }
    auto it = t.index_.find(*e.parent);
    if (it == t.index_.end()) {
      throw MalformedTaxonomy("entity '" + e.id.str() + "' has dangling parent '" +
                              e.parent->str() + "'");
    }
    if (it->second == i) throw MalformedTaxonomy("entity '" + e.id.str() + "' is its own parent");
    t.parent_[i] = it->second;
  }
  if (roots != 1) {
    throw MalformedTaxonomy("expected exactly one root, found " + std::to_string(roots));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (i != t.root_) t.entities_[t.parent_[i]].children.push_back(t.entities_[i].id);
  }

  // Depths by walking up; anything not reaching the root within n steps sits
  // on a cycle.
  t.depth_.assign(n, 0);
  t.depth_[t.root_] = 1;
  std::vector<std::size_t> path;
  for (std::size_t i = 0; i < n; ++i) {
    path.clear();
    std::size_t cur = i;
    while (t.depth_[cur] == 0) {
      path.push_back(cur);
      if (path.size() > n) {
        throw MalformedTaxonomy("cycle through entity '" + t.entities_[i].id.str() + "'");
      }
      cur = t.parent_[cur];
    }
    int d = t.depth_[cur];
    for (auto it = path.rbegin(); it != path.rend(); ++it) t.depth_[*it] = ++d;
  }

  t.bfs_.reserve(n);
  std::deque<std::size_t> queue{t.root_};
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    t.bfs_.push_back(t.entities_[i].id);
    for (const auto& c : t.entities_[i].children) queue.push_back(t.index_.at(c));
  }
  return t;
}

std::size_t Taxonomy::index_of(const EntityId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UnknownEntity("unknown entity '" + id.str() + "'");
  return it->second;
}

const Entity& Taxonomy::at(const EntityId& id) const { return entities_[index_of(id)]; }

std::vector<std::pair<EntityId, EntityId>> Taxonomy::edges() const {
  std::vector<std::pair<EntityId, EntityId>> out;
  out.reserve(entities_.size() - 1);
  for (std::size_t i = 0; i < entities_.size(); ++i) {
    if (i != root_) out.emplace_back(entities_[parent_[i]].id, entities_[i].id);
  }
  return out;
}

int Taxonomy::depth(const EntityId& id) const { return depth_[index_of(id)]; }

int Taxonomy::max_depth() const { return *std::max_element(depth_.begin(), depth_.end()); }

EntityId Taxonomy::lca(const EntityId& a, const EntityId& b) const {
  std::size_t x = index_of(a);
  std::size_t y = index_of(b);
  while (depth_[x] > depth_[y]) x = parent_[x];
  while (depth_[y] > depth_[x]) y = parent_[y];
  while (x != y) {
    x = parent_[x];
    y = parent_[y];
  }
  return entities_[x].id;
}

std::vector<EntityId> Taxonomy::leaves() const {
  std::vector<EntityId> out;
  for (std::size_t i = 0; i < entities_.size(); ++i) {
    if (i != root_ && entities_[i].children.empty()) out.push_back(entities_[i].id);
  }
  return out;
}

Taxonomy Taxonomy::attach(const Entity& query, const EntityId& anchor) const {
  if (!contains(anchor)) throw UnknownEntity("unknown anchor '" + anchor.str() + "'");
  if (contains(query.id)) throw DuplicateEntity("entity '" + query.id.str() + "' already exists");
  auto recs = records();
  recs.push_back(EntityRecord{query.id, query.term, query.definition, anchor});
  return from_records(std::move(recs));
}

Taxonomy Taxonomy::without_leaves(const std::vector<EntityId>& leaves) const {
  std::unordered_set<EntityId> drop;
  for (const auto& id : leaves) {
    const auto& e = at(id);
    if (!e.children.empty() || !e.parent) {
      throw InvalidConfig("entity '" + id.str() + "' is not a leaf");
    }
    drop.insert(id);
  }
  std::vector<EntityRecord> recs;
  recs.reserve(entities_.size() - drop.size());
  for (const auto& e : entities_) {
    if (!drop.contains(e.id)) recs.push_back(EntityRecord{e.id, e.term, e.definition, e.parent});
  }
  return from_records(std::move(recs));
}

std::vector<EntityRecord> Taxonomy::records() const {
  std::vector<EntityRecord> out;
  out.reserve(entities_.size());
  for (const auto& e : entities_) out.push_back(EntityRecord{e.id, e.term, e.definition, e.parent});
  return out;
}

}  // namespace taxo
