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

#include "taxo/taxonomy/canonical_io.hpp"

#include "json.hpp"
#include "taxo/core/errors.hpp"
#include "taxo/core/paths.hpp"

namespace taxo {

using ordered_json = nlohmann::ordered_json;

std::string to_canonical_jsonl(const std::vector<EntityRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    ordered_json j;
    j["id"] = r.id.str();
    j["term"] = r.term;
    j["definition"] = r.definition;
    j["parent"] = r.parent ? ordered_json(r.parent->str()) : ordered_json(nullptr);
    try {
      out += j.dump();
    } catch (const ordered_json::exception& e) {
      throw DataError("entity '" + r.id.str() + "' is not valid UTF-8");
    }
    out += '\n';
  }
  return out;
}

std::vector<EntityRecord> parse_canonical_jsonl(std::string_view text) {
  std::vector<EntityRecord> out;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      auto j = ordered_json::parse(line);
      EntityRecord r;
      r.id = EntityId(j.at("id").get<std::string>());
      r.term = j.at("term").get<std::string>();
      if (auto it = j.find("definition"); it != j.end() && !it->is_null()) {
        r.definition = it->get<std::string>();
      }
      if (const auto& p = j.at("parent"); !p.is_null()) r.parent = EntityId(p.get<std::string>());
      out.push_back(std::move(r));
    } catch (const ordered_json::exception& e) {
      throw DataError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

Taxonomy read_canonical(const std::filesystem::path& path) {
  auto records = parse_canonical_jsonl(read_file(path));
  if (records.empty()) throw DataError(path.string() + ": no entities");
  return Taxonomy::from_records(std::move(records));
}

void write_canonical(const Taxonomy& t, const std::filesystem::path& path) {
  write_file_atomically(path, to_canonical_jsonl(t.records()));
}

}  // namespace taxo
