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

#include "taxo/parser/anchor_index.hpp"

#include <algorithm>
#include <unordered_set>

namespace taxo {
namespace {

std::string fold(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  }
  return out;
}

bool is_alnum_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

template <typename Map>
void add_key(Map& m, std::string key, const EntityId& id) {
  auto& v = m[std::move(key)];
  if (std::find(v.begin(), v.end(), id) == v.end()) v.push_back(id);
}

}  // namespace

std::string normalize_name(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : s) {
    if (is_alnum_byte(c)) {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back(static_cast<char>((c >= 'A' && c <= 'Z') ? c + 32 : c));
    } else {
      pending_space = true;
    }
  }
  return out;
}

AnchorIndex::AnchorIndex(const Taxonomy& t, const IdentifierTable& identifiers) {
  for (const auto& id : t.breadth_first()) {
    add_identifier(identifiers.of(id), id);
    add_term(t.at(id).term, id);
    ids_.push_back(id);
  }
  std::stable_sort(fuzzy_terms_.begin(), fuzzy_terms_.end(),
                   [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
}

AnchorIndex::AnchorIndex(const std::map<std::string, EntityId>& identifiers,
                         const std::vector<std::pair<std::string, EntityId>>& terms) {
  std::unordered_set<EntityId> seen;
  for (const auto& [ident, id] : identifiers) {
    add_identifier(ident, id);
    if (seen.insert(id).second) ids_.push_back(id);
  }
  for (const auto& [term, id] : terms) {
    add_term(term, id);
    if (seen.insert(id).second) ids_.push_back(id);
  }
  std::stable_sort(fuzzy_terms_.begin(), fuzzy_terms_.end(),
                   [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
}

void AnchorIndex::add_identifier(const std::string& ident, const EntityId& id) {
  add_key(identifiers_.exact, ident, id);
  add_key(identifiers_.folded, fold(ident), id);
  add_key(normalized_, normalize_name(ident), id);
}

void AnchorIndex::add_term(const std::string& term, const EntityId& id) {
  add_key(terms_.exact, term, id);
  add_key(terms_.folded, fold(term), id);
  auto norm = normalize_name(term);
  add_key(normalized_, norm, id);
  if (!norm.empty()) fuzzy_terms_.emplace_back(std::move(norm), id);
}

std::optional<AnchorMatch> AnchorIndex::probe(const Table& t, std::string_view name) {
  if (auto it = t.exact.find(std::string(name)); it != t.exact.end()) {
    return AnchorMatch{it->second.front(), MatchRung::exact, it->second.size() > 1};
  }
  if (auto it = t.folded.find(fold(name)); it != t.folded.end()) {
    return AnchorMatch{it->second.front(), MatchRung::case_insensitive, it->second.size() > 1};
  }
  return std::nullopt;
}

std::optional<AnchorMatch> AnchorIndex::by_identifier(std::string_view name) const {
  if (auto m = probe(identifiers_, name)) return m;
  if (auto it = normalized_.find(normalize_name(name)); it != normalized_.end() && !it->first.empty()) {
    return AnchorMatch{it->second.front(), MatchRung::normalized, it->second.size() > 1};
  }
  return std::nullopt;
}

std::optional<AnchorMatch> AnchorIndex::by_term(std::string_view name) const {
  if (auto m = probe(terms_, name)) return m;
  if (auto it = normalized_.find(normalize_name(name)); it != normalized_.end() && !it->first.empty()) {
    return AnchorMatch{it->second.front(), MatchRung::normalized, it->second.size() > 1};
  }
  return std::nullopt;
}

std::optional<EntityId> AnchorIndex::longest_term_in(std::string_view text) const {
  // Normalizing the text turns whole-word matching into matching between
  // spaces.
  const std::string hay = " " + normalize_name(text) + " ";
  for (const auto& [term, id] : fuzzy_terms_) {
    if (hay.find(" " + term + " ") != std::string::npos) return id;
  }
  return std::nullopt;
}

}  // namespace taxo
