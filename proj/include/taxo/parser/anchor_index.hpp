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
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "taxo/prompt/identifiers.hpp"
#include "taxo/taxonomy/taxonomy.hpp"

namespace taxo {

// Lowercase ASCII, every non-alphanumeric ASCII byte becomes a space, runs
// of spaces collapse, ends trimmed. "Pick's_disease" -> "pick s disease".
std::string normalize_name(std::string_view s);

enum class MatchRung { exact, case_insensitive, normalized };

struct AnchorMatch {
  EntityId id;
  MatchRung rung = MatchRung::exact;
  bool ambiguous = false;  // several entities share the matched key
};

// Lookup tables over the entities a completion may name. When several
// entities share a key, the first one in breadth-first order wins and the
// match is marked ambiguous.
class AnchorIndex {
 public:
  AnchorIndex() = default;
  AnchorIndex(const Taxonomy& t, const IdentifierTable& identifiers);
  // From explicit maps (identifier -> id and term -> id). Either may be empty.
  AnchorIndex(const std::map<std::string, EntityId>& identifiers,
              const std::vector<std::pair<std::string, EntityId>>& terms);

  std::optional<AnchorMatch> by_identifier(std::string_view name) const;
  std::optional<AnchorMatch> by_term(std::string_view name) const;

  // Longest term occurring in `text` as a whole word (case-insensitive).
  std::optional<EntityId> longest_term_in(std::string_view text) const;

  std::size_t size() const noexcept { return ids_.size(); }

 private:
  struct Table {
    std::unordered_map<std::string, std::vector<EntityId>> exact;
    std::unordered_map<std::string, std::vector<EntityId>> folded;
  };
  static std::optional<AnchorMatch> probe(const Table& t, std::string_view name);
  void add_identifier(const std::string& ident, const EntityId& id);
  void add_term(const std::string& term, const EntityId& id);

  Table identifiers_;
  Table terms_;
  std::unordered_map<std::string, std::vector<EntityId>> normalized_;
  std::vector<std::pair<std::string, EntityId>> fuzzy_terms_;  // normalized, longest first
  std::vector<EntityId> ids_;
};

}  // namespace taxo
