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

#include "taxo/harness/run_config.hpp"

#include "taxo/core/errors.hpp"
#include "taxo/core/hashing.hpp"

namespace taxo {

std::string_view to_string(DemoSelection d) { return d == DemoSelection::similarity ? "similarity" : "random"; }

DemoSelection parse_demo_selection(std::string_view s) {
  if (s == "similarity" || s == "on") return DemoSelection::similarity;
  if (s == "random" || s == "off") return DemoSelection::random;
  throw InvalidConfig("unknown demonstration selection '" + std::string(s) + "'");
}

void RunConfig::validate() const {
  if (benchmark.empty()) throw InvalidConfig("no benchmark given");
  if (!(filter_ratio > 0.0 && filter_ratio <= 1.0)) throw InvalidConfig("filter ratio must lie in (0, 1]");
  if (!(split_fraction > 0.0 && split_fraction < 1.0)) throw InvalidConfig("split fraction must lie in (0, 1)");
  if (!(temperature >= 0.0)) throw InvalidConfig("temperature must be >= 0");
  if (max_output_tokens <= 0) throw InvalidConfig("max output tokens must be positive");
  if (model_tag.empty()) throw InvalidConfig("no model tag given");
  if (workers == 0) throw InvalidConfig("need at least one worker");
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["benchmark"] = benchmark;
  j["format"] = std::string(to_string(format));
  j["shots"] = shots;
  j["filter_enabled"] = filter_enabled;
  j["filter_ratio"] = filter_ratio;
  j["demo_selection"] = std::string(to_string(demos));
  j["defs_enabled"] = defs_enabled;
  j["explain_enabled"] = explain_enabled;
  j["model_tag"] = model_tag;
  j["backend"] = backend;
  j["embedder"] = embedder;
  j["seed"] = seed;
  j["split_fraction"] = split_fraction;
  j["temperature"] = temperature;
  j["max_output_tokens"] = max_output_tokens;
  j["tokenizer"] = tokenizer;
  j["wup"] = wup_attached ? "attached" : "anchor";
  return j;
}

std::string RunConfig::fingerprint() const { return sha256_hex(to_json().dump()); }

}  // namespace taxo
