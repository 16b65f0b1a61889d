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
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "taxo/core/entity_id.hpp"

namespace taxo {

struct Entity {
  EntityId id;
  std::string term;
  // Possibly empty.
  std::string definition;
  std::optional<EntityId> parent;
  std::vector<EntityId> children;
};

// Flat, order-preserving form of one entity. This is what the canonical
// JSON-lines format stores.
struct EntityRecord {
  EntityId id;
  std::string term;
  std::string definition;
  std::optional<EntityId> parent;

  friend bool operator==(const EntityRecord&, const EntityRecord&) = default;
};

// Immutable validated tree. Entities keep the order they were supplied in;
// child lists follow the same order.
class Taxonomy {
 public:
  // Throws MalformedTaxonomy on duplicate ids, dangling parents, zero or
  // several roots, or cycles.
  static Taxonomy from_records(std::vector<EntityRecord> records);

  std::size_t size() const noexcept { return entities_.size(); }
  const EntityId& root() const noexcept { return entities_[root_].id; }
  bool contains(const EntityId& id) const { return index_.contains(id); }

  // Throws UnknownEntity.
  const Entity& at(const EntityId& id) const;
  const std::vector<Entity>& entities() const noexcept { return entities_; }

  // (parent, child) pairs in entity order.
  std::vector<std::pair<EntityId, EntityId>> edges() const;

  // Root has depth 1.
  int depth(const EntityId& id) const;
  int max_depth() const;
  EntityId lca(const EntityId& a, const EntityId& b) const;

  // Non-root entities without children, in entity order.
  std::vector<EntityId> leaves() const;
  // Level order from the root, children in stored order.
  const std::vector<EntityId>& breadth_first() const noexcept { return bfs_; }

  // Returns a new taxonomy with `query` appended as the last child of
  // `anchor`. Any parent/children carried by `query` are ignored.
  // Throws UnknownEntity or DuplicateEntity.
  Taxonomy attach(const Entity& query, const EntityId& anchor) const;

  // Removes the given leaves. Throws InvalidConfig if one is not a leaf.
  Taxonomy without_leaves(const std::vector<EntityId>& leaves) const;

  std::vector<EntityRecord> records() const;

 private:
  std::size_t index_of(const EntityId& id) const;

  std::vector<Entity> entities_;
  std::unordered_map<EntityId, std::size_t> index_;
  std::vector<std::size_t> parent_;  // index; root points at itself
  std::vector<int> depth_;
  std::vector<EntityId> bfs_;
  std::size_t root_ = 0;
};

}  // namespace taxo
