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

#include "taxo/taxonomy/loader.hpp"

#include <sstream>
#include <unordered_map>

#include "taxo/core/errors.hpp"
#include "taxo/core/paths.hpp"

namespace taxo {

Taxonomy load_taxonomy(const std::vector<EdgeRecord>& edges,
                       const std::map<std::string, std::string>& definitions,
                       LoadReport* report, const std::map<std::string, std::string>* terms) {
  LoadReport local;
  LoadReport& rep = report ? *report : local;
  rep.edges_read += edges.size();

  // Keys in order of first appearance; the first listed parent wins.
  std::vector<std::string> keys;
  std::unordered_map<std::string, std::size_t> slot;
  std::unordered_map<std::string, std::string> parent_of;
  auto touch = [&](const std::string& key) {
    if (slot.emplace(key, keys.size()).second) keys.push_back(key);
  };
  for (const auto& e : edges) {
    if (e.child == e.parent) throw MalformedTaxonomy("self loop on '" + e.child + "'");
    touch(e.parent);
    touch(e.child);
    auto [it, inserted] = parent_of.emplace(e.child, e.parent);
    if (!inserted && it->second != e.parent) rep.dropped_edges.push_back(e);
  }
  if (edges.empty()) {
    for (const auto& [key, _] : definitions) touch(key);
  }

  std::unordered_map<std::string, EntityId> id_of;
  std::unordered_map<std::string, int> term_uses;
  auto term_for = [&](const std::string& key) -> const std::string& {
    if (terms) {
      auto it = terms->find(key);
      if (it != terms->end()) return it->second;
    }
    return key;
  };
  for (const auto& key : keys) {
    const std::string& term = term_for(key);
    const int n = ++term_uses[term];
    id_of.emplace(key, EntityId(n == 1 ? term : term + "#" + std::to_string(n)));
  }

  std::vector<EntityRecord> records;
  records.reserve(keys.size());
  for (const auto& key : keys) {
    EntityRecord r;
    r.id = id_of.at(key);
    r.term = term_for(key);
    if (auto it = definitions.find(key); it != definitions.end()) r.definition = it->second;
    if (auto it = parent_of.find(key); it != parent_of.end()) r.parent = id_of.at(it->second);
    records.push_back(std::move(r));
  }
  for (const auto& [key, _] : definitions) {
    if (!slot.contains(key)) rep.diagnostics.push_back("definition for unused term '" + key + "'");
  }
  return Taxonomy::from_records(std::move(records));
}

TsvRows read_tsv_pairs(const std::filesystem::path& path) {
  TsvRows out;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    auto where = path.string() + ":" + std::to_string(lineno) + ": ";
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      out.diagnostics.push_back(where + "expected two tab-separated columns");
      continue;
    }
    if (tab == 0) {
      out.diagnostics.push_back(where + "empty first column");
      continue;
    }
    out.rows.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return out;
}

Taxonomy load_pair_files(const std::filesystem::path& pairs,
                         const std::optional<std::filesystem::path>& definitions,
                         LoadReport* report) {
  LoadReport local;
  LoadReport& rep = report ? *report : local;
  auto edge_rows = read_tsv_pairs(pairs);
  std::vector<std::string> problems = edge_rows.diagnostics;
  std::vector<EdgeRecord> edges;
  for (auto& [child, parent] : edge_rows.rows) {
    if (parent.empty()) {
      problems.push_back(pairs.string() + ": empty parent for '" + child + "'");
      continue;
    }
    edges.push_back(EdgeRecord{std::move(child), std::move(parent)});
  }
  std::map<std::string, std::string> defs;
  if (definitions) {
    auto def_rows = read_tsv_pairs(*definitions);
    problems.insert(problems.end(), def_rows.diagnostics.begin(), def_rows.diagnostics.end());
    for (auto& [term, def] : def_rows.rows) defs.emplace(std::move(term), std::move(def));
  }
  rep.diagnostics.insert(rep.diagnostics.end(), problems.begin(), problems.end());
  if (!problems.empty()) {
    throw DataError(std::to_string(problems.size()) + " malformed row(s), first: " + problems.front());
  }
  if (edges.empty()) throw DataError(pairs.string() + ": no edges");
  return load_taxonomy(edges, defs, &rep);
}

TaxonomyStats stats(const Taxonomy& t) {
  return TaxonomyStats{t.size(), t.size() - 1, t.max_depth()};
}

}  // namespace taxo
