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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "taxo/harness/run_config.hpp"
#include "taxo/taxonomy/split.hpp"
#include "taxo/taxonomy/taxonomy.hpp"

namespace taxo {

struct BenchmarkTaxonomy {
  std::string name;  // file or directory stem
  Taxonomy taxonomy;
};

struct Benchmark {
  std::string name;
  std::vector<BenchmarkTaxonomy> taxonomies;
};

// Names with a directory under data/benchmarks.
std::vector<std::string> known_benchmarks();

// Accepts a registered name or a path: a directory with pairs.tsv (and
// optionally definitions.tsv), a directory of canonical .jsonl files, or a
// single .jsonl file. Throws InvalidConfig when nothing is found.
Benchmark load_benchmark(const std::string& name_or_path);

// The filter is worth running when some taxonomy is too large to list in
// full; smaller ones go into the prompt whole.
bool default_filter_enabled(const Benchmark& b);

struct SplitTaxonomy {
  std::string name;
  Taxonomy original;
  BenchmarkSplit split;
};

// Per-taxonomy leaf splits. Each taxonomy's seed mixes cfg.seed with its name.
std::vector<SplitTaxonomy> prepare_splits(const Benchmark& b, double fraction, std::uint64_t seed);

}  // namespace taxo
