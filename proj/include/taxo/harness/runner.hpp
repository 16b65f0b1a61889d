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

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "taxo/embedding/embedding_client.hpp"
#include "taxo/harness/benchmark.hpp"
#include "taxo/harness/run_config.hpp"
#include "taxo/llm/gateway.hpp"
#include "taxo/llm/mock_backend.hpp"
#include "taxo/metrics/report.hpp"

namespace taxo {

struct RunEnvironment {
  std::shared_ptr<LlmGateway> gateway;
  std::shared_ptr<EmbeddingClient> embeddings;
  std::function<void(const std::string&)> log;  // optional progress sink
};

// Runs every held-out query of every taxonomy in the benchmark through
// filter, demonstration selection, rendering, completion, parsing and
// scoring. Per-query backend failures are recorded in the report. When
// cfg.output_dir is set, writes report.json, report.csv, audit.jsonl (and
// prompts/ with dump_prompts). Throws InvalidConfig when the benchmark has
// no queries or output_dir already holds a report with another fingerprint.
EvalReport run_benchmark(RunConfig cfg, const Benchmark& benchmark, RunEnvironment& env);
EvalReport run_benchmark(RunConfig cfg, RunEnvironment& env);

// Mock rules that answer every query of the benchmark with its gold
// parent, in both formats and with or without definitions.
std::vector<MockRule> oracle_rules(const std::vector<SplitTaxonomy>& splits);

}  // namespace taxo
