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
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "taxo/prompt/render.hpp"

namespace taxo {

enum class DemoSelection { similarity, random };

std::string_view to_string(DemoSelection d);
DemoSelection parse_demo_selection(std::string_view s);

// Everything that determines a run's results. output_dir and the worker
// count are excluded from the fingerprint.
struct RunConfig {
  std::string benchmark = "wordnet";  // registered name or path
  PromptFormat format = PromptFormat::code;
  std::size_t shots = 1;
  bool filter_enabled = false;
  double filter_ratio = 0.5;
  DemoSelection demos = DemoSelection::similarity;
  bool defs_enabled = true;
  bool explain_enabled = false;
  std::string model_tag = "gpt-4o";
  // Identifies what answers model_tag: "openai", "mock:oracle", "mock:<hash>".
  std::string backend = "openai";
  std::string embedder;  // embedding model tag; filled in by the runner
  std::uint64_t seed = 42;
  double split_fraction = 0.2;
  double temperature = 0.0;
  int max_output_tokens = 256;
  std::string tokenizer = "cl100k_base";
  bool wup_attached = false;

  std::filesystem::path output_dir;
  std::size_t workers = 4;
  bool dump_prompts = false;

  // Throws InvalidConfig.
  void validate() const;
  nlohmann::ordered_json to_json() const;
  std::string fingerprint() const;
};

}  // namespace taxo
