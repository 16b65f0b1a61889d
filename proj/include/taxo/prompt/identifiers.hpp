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

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "taxo/taxonomy/taxonomy.hpp"

namespace taxo {

// Replaces every code point outside [A-Za-z0-9_] with '_' and prefixes '_'
// when the result starts with a digit. Case is preserved.
std::string sanitize_identifier(std::string_view term);

// Unique identifiers for one prompt. Assigned over the seed taxonomy in
// breadth-first order, then the query; a repeated name gets "_2", "_3", ...
// Copies are cheap: the seed part is shared.
class IdentifierTable {
 public:
  IdentifierTable() = default;
  IdentifierTable(const Taxonomy& t, const Entity* query);

  // Same seed identifiers plus `query`.
  IdentifierTable with_query(const Entity& query) const;

  // Throws UnknownEntity.
  const std::string& of(const EntityId& id) const;
  bool contains(const EntityId& id) const;
  // identifier -> id, seed entities only (the query is not a valid anchor).
  const std::map<std::string, EntityId>& anchors() const;

 private:
  struct Seed {
    std::unordered_map<EntityId, std::string> by_id;
    std::map<std::string, EntityId> anchors;
  };
  std::shared_ptr<const Seed> seed_;
  std::optional<std::pair<EntityId, std::string>> query_;
};

}  // namespace taxo
