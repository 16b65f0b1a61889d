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

// Drives the taxo executable and checks exit codes and outputs.
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "doctest.h"
#include "taxo/core/paths.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("taxo-cli-test-" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(TAXO_CLI_PATH) + " " + args + " > '" + log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("run with the oracle mock succeeds") {
  const auto dir = scratch_dir("run");
  CHECK(run_cli("run -b wordnet --mock oracle --embedder hashing --out '" + (dir / "out").string() + "'", dir / "log") == 0);
  CHECK(taxo::read_file(dir / "log").find("accuracy: 100.0") != std::string::npos);
  CHECK(fs::exists(dir / "out" / "report.json"));
  CHECK(fs::exists(dir / "out" / "cache" / "embeddings.jsonl"));
  CHECK(run_cli("report '" + (dir / "out" / "report.json").string() + "'", dir / "log2") == 0);
  CHECK(taxo::read_file(dir / "log2").find("| 100.0 | 100.0 |") != std::string::npos);
  // second run into the same directory with another configuration
  CHECK(run_cli("run -b wordnet --shots 5 --mock oracle --embedder hashing --out '" + (dir / "out").string() + "'",
             dir / "log3") == 1);
}

TEST_CASE("exit codes") {
  const auto dir = scratch_dir("codes");
  CHECK(run_cli("run --bogus-flag", dir / "log") == 1);
  CHECK(run_cli("run -b nowhere --mock oracle --out '" + (dir / "o").string() + "'", dir / "log") == 1);
  CHECK(run_cli("run -b wordnet --filter-ratio 0 --mock oracle --embedder hashing --out '" + (dir / "o2").string() + "'",
             dir / "log") == 1);

  std::ofstream(dir / "bad.tsv") << "a\tb\nnot a row\n";
  CHECK(run_cli("ingest '" + (dir / "bad.tsv").string() + "'", dir / "log") == 2);
  CHECK(taxo::read_file(dir / "log").find(":2:") != std::string::npos);
  std::ofstream(dir / "empty.tsv") << "";
  CHECK(run_cli("ingest '" + (dir / "empty.tsv").string() + "'", dir / "log") == 2);

  // every request fails transiently
  std::ofstream(dir / "flaky.json") << R"({"transient_failures": 1000000, "rules": [{"match": "substring", "pattern": "Query", "response": "x"}]})";
  CHECK(run_cli("run -b '" + taxo::test::fixture("insanity.jsonl").string() + "' --mock '" + (dir / "flaky.json").string() +
                 "' --embedder hashing --max-attempts 2 --retry-base-ms 1 --out '" + (dir / "o3").string() + "'",
             dir / "log") == 3);
}

TEST_CASE("ingest and split") {
  const auto dir = scratch_dir("ingest");
  const auto env = taxo::data_dir() / "benchmarks" / "semeval-env";
  CHECK(run_cli("ingest '" + env.string() + "' -o '" + (dir / "env.jsonl").string() + "'", dir / "log") == 0);
  const auto log = taxo::read_file(dir / "log");
  CHECK(log.find("\"concepts\":261") != std::string::npos);
  CHECK(log.find("\"depth\":6") != std::string::npos);
  CHECK(run_cli("ingest --format canonical '" + (dir / "env.jsonl").string() + "' -o '" + (dir / "again.jsonl").string() +
                 "'",
             dir / "log") == 0);
  CHECK(taxo::read_file(dir / "env.jsonl") == taxo::read_file(dir / "again.jsonl"));

  CHECK(run_cli("split -b wordnet -o '" + (dir / "split").string() + "'", dir / "log") == 0);
  CHECK(fs::exists(dir / "split" / "00-insanity" / "seed.jsonl"));
  CHECK(fs::exists(dir / "split" / "00-insanity" / "queries.jsonl"));
}
