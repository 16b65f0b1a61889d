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

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace taxo {

// Opaque, stable identifier of a taxonomy entity. Distinct from the entity's
// surface term: two entities may share a term but never an id.
class EntityId {
 public:
  EntityId() = default;
  explicit EntityId(std::string value) : value_(std::move(value)) {}
  explicit EntityId(std::string_view value) : value_(value) {}
  explicit EntityId(const char* value) : value_(value) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const EntityId&, const EntityId&) = default;
  friend bool operator==(const EntityId&, const EntityId&) = default;

  friend std::ostream& operator<<(std::ostream& os, const EntityId& id) {
    return os << id.value_;
  }

 private:
  std::string value_;
};

}  // namespace taxo

template <>
struct std::hash<taxo::EntityId> {
  std::size_t operator()(const taxo::EntityId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
