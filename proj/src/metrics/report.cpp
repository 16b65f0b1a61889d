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

#include "taxo/metrics/report.hpp"

#include <cmath>
#include <cstdio>

#include "taxo/core/errors.hpp"
#include "taxo/core/paths.hpp"

namespace taxo {
namespace {

using ojson = nlohmann::ordered_json;

template <typename T>
ojson opt(const std::optional<T>& v) {
  return v ? ojson(*v) : ojson(nullptr);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void aggregate(EvalReport& r, const std::string& tokenizer_tag) {
  const auto n = static_cast<double>(r.per_query.size());
  std::size_t correct = 0;
  double wup = 0;
  std::size_t rendered = 0;
  r.status_counts.clear();
  r.token_stats = TokenStats{};
  r.token_stats.tokenizer = tokenizer_tag;
  std::vector<std::size_t> ranks;
  for (const auto& q : r.per_query) {
    if (q.correct) ++correct;
    wup += q.wup;
    r.token_stats.total_prompt_tokens += q.prompt_tokens;
    r.token_stats.total_completion_tokens += q.completion_tokens;
    rendered += q.rendered_tokens;
    ++r.status_counts[q.status];
    if (q.gold_rank) ranks.push_back(*q.gold_rank);
  }
  if (n > 0) {
    r.accuracy = static_cast<double>(correct) / n;
    r.wu_palmer_mean = wup / n;
    r.token_stats.mean_prompt_tokens = static_cast<double>(r.token_stats.total_prompt_tokens) / n;
    r.token_stats.mean_completion_tokens = static_cast<double>(r.token_stats.total_completion_tokens) / n;
    r.token_stats.mean_rendered_tokens = static_cast<double>(rendered) / n;
  } else {
    r.accuracy = r.wu_palmer_mean = 0;
  }
  r.hit_at_k.clear();
  if (!ranks.empty() && ranks.size() == r.per_query.size()) {
    for (std::size_t k : {1, 5, 10, 25, 50, 100}) {
      double h = 0;
      std::size_t hits = 0;
      for (auto rank : ranks) hits += (rank >= 1 && rank <= k) ? 1 : 0;
      h = static_cast<double>(hits) / static_cast<double>(ranks.size());
      r.hit_at_k[k] = h;
    }
  }
}

ojson to_json(const EvalReport& r) {
  ojson j;
  j["config_fingerprint"] = r.config_fingerprint;
  j["config"] = r.config;
  j["accuracy"] = r.accuracy;
  j["wu_palmer_mean"] = r.wu_palmer_mean;
  ojson hits = ojson::object();
  for (const auto& [k, v] : r.hit_at_k) hits[std::to_string(k)] = v;
  j["hit_at_k"] = hits;
  ojson ts;
  ts["tokenizer"] = r.token_stats.tokenizer;
  ts["mean_prompt_tokens"] = r.token_stats.mean_prompt_tokens;
  ts["mean_completion_tokens"] = r.token_stats.mean_completion_tokens;
  ts["mean_rendered_tokens"] = r.token_stats.mean_rendered_tokens;
  ts["total_prompt_tokens"] = r.token_stats.total_prompt_tokens;
  ts["total_completion_tokens"] = r.token_stats.total_completion_tokens;
  j["token_stats"] = ts;
  ojson counts = ojson::object();
  for (const auto& [k, v] : r.status_counts) counts[k] = v;
  j["status_counts"] = counts;
  ojson rows = ojson::array();
  for (const auto& q : r.per_query) {
    ojson row;
    row["taxonomy"] = q.taxonomy;
    row["query_id"] = q.query_id;
    row["query_term"] = q.query_term;
    row["gold_parent"] = q.gold_parent;
    row["predicted"] = opt(q.predicted);
    row["status"] = q.status;
    row["correct"] = q.correct;
    row["wup"] = q.wup;
    row["fuzzy"] = q.fuzzy;
    row["prompt_tokens"] = q.prompt_tokens;
    row["completion_tokens"] = q.completion_tokens;
    row["rendered_tokens"] = q.rendered_tokens;
    row["context_entities"] = q.context_entities;
    row["gold_rank"] = opt(q.gold_rank);
    rows.push_back(std::move(row));
  }
  j["per_query"] = std::move(rows);
  return j;
}

EvalReport report_from_json(const nlohmann::json& j) {
  EvalReport r;
  try {
    r.config_fingerprint = j.at("config_fingerprint").get<std::string>();
    r.config = ojson::parse(j.at("config").dump());
    r.accuracy = j.at("accuracy").get<double>();
    r.wu_palmer_mean = j.at("wu_palmer_mean").get<double>();
    for (const auto& [k, v] : j.at("hit_at_k").items()) r.hit_at_k[std::stoul(k)] = v.get<double>();
    const auto& ts = j.at("token_stats");
    r.token_stats.tokenizer = ts.at("tokenizer").get<std::string>();
    r.token_stats.mean_prompt_tokens = ts.at("mean_prompt_tokens").get<double>();
    r.token_stats.mean_completion_tokens = ts.at("mean_completion_tokens").get<double>();
    r.token_stats.mean_rendered_tokens = ts.at("mean_rendered_tokens").get<double>();
    r.token_stats.total_prompt_tokens = ts.at("total_prompt_tokens").get<std::size_t>();
    r.token_stats.total_completion_tokens = ts.at("total_completion_tokens").get<std::size_t>();
    for (const auto& [k, v] : j.at("status_counts").items()) r.status_counts[k] = v.get<std::size_t>();
    for (const auto& row : j.at("per_query")) {
      QueryResult q;
      q.taxonomy = row.at("taxonomy").get<std::string>();
      q.query_id = row.at("query_id").get<std::string>();
      q.query_term = row.at("query_term").get<std::string>();
      q.gold_parent = row.at("gold_parent").get<std::string>();
      if (!row.at("predicted").is_null()) q.predicted = row.at("predicted").get<std::string>();
      q.status = row.at("status").get<std::string>();
      q.correct = row.at("correct").get<bool>();
      q.wup = row.at("wup").get<double>();
      q.fuzzy = row.at("fuzzy").get<bool>();
      q.prompt_tokens = row.at("prompt_tokens").get<std::size_t>();
      q.completion_tokens = row.at("completion_tokens").get<std::size_t>();
      q.rendered_tokens = row.at("rendered_tokens").get<std::size_t>();
      q.context_entities = row.at("context_entities").get<std::size_t>();
      if (!row.at("gold_rank").is_null()) q.gold_rank = row.at("gold_rank").get<std::size_t>();
      r.per_query.push_back(std::move(q));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string report_json_text(const EvalReport& r) { return to_json(r).dump(2) + "\n"; }

EvalReport load_report(const std::filesystem::path& path) {
  try {
    return report_from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void save_report(const EvalReport& r, const std::filesystem::path& path) {
  write_file_atomically(path, report_json_text(r));
}

std::string report_csv(const EvalReport& r) {
  std::string out =
      "taxonomy,query_id,query_term,gold_parent,predicted,status,correct,wup,fuzzy,prompt_tokens,"
      "completion_tokens,rendered_tokens,context_entities,gold_rank\n";
  for (const auto& q : r.per_query) {
    out += csv_field(q.taxonomy) + ',' + csv_field(q.query_id) + ',' + csv_field(q.query_term) + ',' +
           csv_field(q.gold_parent) + ',' + csv_field(q.predicted.value_or("")) + ',' + q.status + ',' +
           (q.correct ? "1" : "0") + ',' + fmt_double(q.wup) + ',' + (q.fuzzy ? "1" : "0") + ',' +
           std::to_string(q.prompt_tokens) + ',' + std::to_string(q.completion_tokens) + ',' +
           std::to_string(q.rendered_tokens) + ',' + std::to_string(q.context_entities) + ',' +
           (q.gold_rank ? std::to_string(*q.gold_rank) : "") + '\n';
  }
  return out;
}

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", std::round(v * 1000.0) / 10.0);
  return buf;
}

}  // namespace taxo
