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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "taxo/taxonomy/taxonomy.hpp"

namespace taxo {

// Canonical JSON-lines: one compact object per entity with keys id, term,
// definition, parent (null for the root), in that order.
std::string to_canonical_jsonl(const std::vector<EntityRecord>& records);
std::vector<EntityRecord> parse_canonical_jsonl(std::string_view text);

Taxonomy read_canonical(const std::filesystem::path& path);
void write_canonical(const Taxonomy& t, const std::filesystem::path& path);

}  // namespace taxo
