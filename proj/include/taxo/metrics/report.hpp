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
#include <string_view>
#include <vector>

#include "json.hpp"

namespace taxo {

// One scored query. `status` is a parse status (ok, not_in_taxonomy,
// unparseable, empty) or a backend failure (context_overflow,
// backend_unavailable, mock_miss).
struct QueryResult {
  std::string taxonomy;  // source file within the benchmark
  std::string query_id;
  std::string query_term;
  std::string gold_parent;
  std::optional<std::string> predicted;
  std::string status;
  bool correct = false;
  double wup = 0.0;
  bool fuzzy = false;
  std::size_t prompt_tokens = 0;      // as reported by the backend
  std::size_t completion_tokens = 0;  // as reported by the backend
  std::size_t rendered_tokens = 0;    // local tokenizer count of the prompt
  std::size_t context_entities = 0;
  std::optional<std::size_t> gold_rank;  // 1-based similarity rank, filter runs only

  friend bool operator==(const QueryResult&, const QueryResult&) = default;
};

struct TokenStats {
  double mean_prompt_tokens = 0;
  double mean_completion_tokens = 0;
  double mean_rendered_tokens = 0;
  std::size_t total_prompt_tokens = 0;
  std::size_t total_completion_tokens = 0;
  std::string tokenizer;

  friend bool operator==(const TokenStats&, const TokenStats&) = default;
};

struct EvalReport {
  std::string config_fingerprint;
  nlohmann::ordered_json config;
  std::vector<QueryResult> per_query;
  double accuracy = 0;
  double wu_palmer_mean = 0;
  std::map<std::size_t, double> hit_at_k;
  TokenStats token_stats;
  std::map<std::string, std::size_t> status_counts;
};

// Fills the aggregate fields from per_query.
void aggregate(EvalReport& report, const std::string& tokenizer_tag);

nlohmann::ordered_json to_json(const EvalReport& r);
EvalReport report_from_json(const nlohmann::json& j);

std::string report_json_text(const EvalReport& r);  // pretty, trailing newline
EvalReport load_report(const std::filesystem::path& path);
void save_report(const EvalReport& r, const std::filesystem::path& path);

// One row per query, RFC 4180 quoting.
std::string report_csv(const EvalReport& r);

// Percentage with one decimal, e.g. 0.6774 -> "67.7".
std::string percent(double v);

}  // namespace taxo
