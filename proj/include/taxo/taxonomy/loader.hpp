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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "taxo/taxonomy/taxonomy.hpp"

namespace taxo {

// One (child, parent) row. Both sides are source keys: terms for SemEval
// pair files, or arbitrary keys when a term map is supplied.
struct EdgeRecord {
  std::string child;
  std::string parent;
};

struct LoadReport {
  std::size_t edges_read = 0;
  std::vector<EdgeRecord> dropped_edges;  // extra parents beyond the first
  std::vector<std::string> diagnostics;
};

// Builds a taxonomy from edge rows. Keys missing from `definitions` get an
// empty definition. When `terms` is given it maps keys to surface terms;
// keys sharing a term get ids "term", "term#2", ... in order of appearance.
// When a key has several parents, the first row wins and the rest are
// recorded in `report`.
Taxonomy load_taxonomy(const std::vector<EdgeRecord>& edges,
                       const std::map<std::string, std::string>& definitions,
                       LoadReport* report = nullptr,
                       const std::map<std::string, std::string>* terms = nullptr);

struct TsvRows {
  std::vector<std::pair<std::string, std::string>> rows;
  std::vector<std::string> diagnostics;  // "path:line: message"
};

// Reads two-column tab-separated rows. Blank lines are skipped; rows without
// exactly one tab or with an empty first column are reported, not returned.
TsvRows read_tsv_pairs(const std::filesystem::path& path);

// Reads a SemEval-style directory or file pair. Throws DataError if any row
// is malformed or the edge file is empty.
Taxonomy load_pair_files(const std::filesystem::path& pairs,
                         const std::optional<std::filesystem::path>& definitions,
                         LoadReport* report = nullptr);

struct TaxonomyStats {
  std::size_t concepts = 0;
  std::size_t edges = 0;
  int depth = 0;
};

TaxonomyStats stats(const Taxonomy& t);

}  // namespace taxo
