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

#include "taxo/prompt/identifiers.hpp"

#include <array>

#include "taxo/core/errors.hpp"

namespace taxo {
namespace {

// Python reserved words; a sanitized term equal to one of these would not
// parse as an assignment target.
constexpr std::array<std::string_view, 35> kReserved = {
    "False", "None",   "True",    "and",      "as",       "assert", "async",  "await", "break",
    "class", "continue", "def",   "del",      "elif",     "else",   "except", "finally", "for",
    "from",  "global", "if",      "import",   "in",       "is",     "lambda", "nonlocal", "not",
    "or",    "pass",   "raise",   "return",   "try",      "while",  "with",   "yield"};

bool is_word_byte(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

}  // namespace

std::string sanitize_identifier(std::string_view term) {
  std::string out;
  out.reserve(term.size() + 1);
  for (std::size_t i = 0; i < term.size(); ++i) {
    const auto c = static_cast<unsigned char>(term[i]);
    if (is_word_byte(c)) {
      out.push_back(static_cast<char>(c));
      continue;
    }
    out.push_back('_');
    // One replacement per code point: skip UTF-8 continuation bytes.
    if (c >= 0xC0) {
      while (i + 1 < term.size() && (static_cast<unsigned char>(term[i + 1]) & 0xC0) == 0x80) ++i;
    }
  }
  if (out.empty()) out = "_";
  if (out[0] >= '0' && out[0] <= '9') out.insert(out.begin(), '_');
  for (auto word : kReserved) {
    if (out == word) {
      out.push_back('_');
      break;
    }
  }
  return out;
}

namespace {

std::string unique_name(const std::map<std::string, EntityId>& taken, std::string_view term) {
  const std::string base = sanitize_identifier(term);
  std::string name = base;
  for (int n = 2; taken.contains(name); ++n) name = base + "_" + std::to_string(n);
  return name;
}

}  // namespace

IdentifierTable::IdentifierTable(const Taxonomy& t, const Entity* query) {
  auto seed = std::make_shared<Seed>();
  for (const auto& id : t.breadth_first()) {
    auto name = unique_name(seed->anchors, t.at(id).term);
    seed->by_id.emplace(id, name);
    seed->anchors.emplace(std::move(name), id);
  }
  seed_ = std::move(seed);
  if (query != nullptr && !seed_->by_id.contains(query->id)) {
    query_.emplace(query->id, unique_name(seed_->anchors, query->term));
  }
}

IdentifierTable IdentifierTable::with_query(const Entity& query) const {
  IdentifierTable out;
  out.seed_ = seed_ ? seed_ : std::make_shared<Seed>();
  if (!out.seed_->by_id.contains(query.id)) out.query_.emplace(query.id, unique_name(out.seed_->anchors, query.term));
  return out;
}

const std::string& IdentifierTable::of(const EntityId& id) const {
  if (query_ && query_->first == id) return query_->second;
  if (seed_) {
    auto it = seed_->by_id.find(id);
    if (it != seed_->by_id.end()) return it->second;
  }
  throw UnknownEntity("no identifier for '" + id.str() + "'");
}

bool IdentifierTable::contains(const EntityId& id) const {
  return (query_ && query_->first == id) || (seed_ && seed_->by_id.contains(id));
}

const std::map<std::string, EntityId>& IdentifierTable::anchors() const {
  static const std::map<std::string, EntityId> kEmpty;
  return seed_ ? seed_->anchors : kEmpty;
}

}  // namespace taxo
