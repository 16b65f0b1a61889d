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

#include "taxo/harness/benchmark.hpp"

#include <algorithm>

#include "taxo/core/errors.hpp"
#include "taxo/core/hashing.hpp"
#include "taxo/core/paths.hpp"
#include "taxo/taxonomy/canonical_io.hpp"
#include "taxo/taxonomy/loader.hpp"

namespace taxo {
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kFilterThreshold = 100;

Benchmark load_directory(const std::string& name, const fs::path& dir) {
  Benchmark b{name, {}};
  if (fs::exists(dir / "pairs.tsv")) {
    std::optional<fs::path> defs;
    if (fs::exists(dir / "definitions.tsv")) defs = dir / "definitions.tsv";
    b.taxonomies.push_back({dir.filename().string(), load_pair_files(dir / "pairs.tsv", defs)});
    return b;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) b.taxonomies.push_back({f.stem().string(), read_canonical(f)});
  if (b.taxonomies.empty()) throw InvalidConfig("no taxonomy files in " + dir.string());
  return b;
}

}  // namespace

std::vector<std::string> known_benchmarks() {
  std::vector<std::string> out;
  const auto root = data_dir() / "benchmarks";
  if (!fs::is_directory(root)) return out;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) out.push_back(entry.path().filename().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Benchmark load_benchmark(const std::string& name_or_path) {
  const fs::path registered = data_dir() / "benchmarks" / name_or_path;
  if (name_or_path.find('/') == std::string::npos && fs::is_directory(registered)) {
    return load_directory(name_or_path, registered);
  }
  const fs::path p(name_or_path);
  if (fs::is_directory(p)) return load_directory(p.filename().string(), p);
  if (fs::is_regular_file(p) && p.extension() == ".jsonl") {
    return Benchmark{p.stem().string(), {{p.stem().string(), read_canonical(p)}}};
  }
  throw InvalidConfig("benchmark '" + name_or_path + "' not found");
}

bool default_filter_enabled(const Benchmark& b) {
  return std::any_of(b.taxonomies.begin(), b.taxonomies.end(),
                     [](const auto& t) { return t.taxonomy.size() > kFilterThreshold; });
}

std::vector<SplitTaxonomy> prepare_splits(const Benchmark& b, double fraction, std::uint64_t seed) {
  std::vector<SplitTaxonomy> out;
  out.reserve(b.taxonomies.size());
  for (const auto& bt : b.taxonomies) {
    const auto mixed = sha256_u64(std::to_string(seed) + ":" + bt.name);
    out.push_back({bt.name, bt.taxonomy, split_leaves(bt.taxonomy, fraction, mixed)});
  }
  return out;
}

}  // namespace taxo
