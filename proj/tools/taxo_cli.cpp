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

// Command-line entry point: taxo {ingest, split, run, grid, report}.
//
// Exit codes: 0 success, 1 configuration error, 2 data error, 3 backend
// exhaustion (retries used up for at least one request).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "taxo/core/errors.hpp"
#include "taxo/core/hashing.hpp"
#include "taxo/core/paths.hpp"
#include "taxo/embedding/provider.hpp"
#include "taxo/harness/grid.hpp"
#include "taxo/harness/runner.hpp"
#include "taxo/llm/openai_backend.hpp"
#include "taxo/taxonomy/canonical_io.hpp"
#include "taxo/taxonomy/loader.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitBackend = 3;

void log_line(const std::string& s) { std::cerr << "[taxo] " << s << "\n"; }

bool parse_switch(const std::string& flag, const std::string& v) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw taxo::InvalidConfig(flag + " expects on|off, got '" + v + "'");
}

struct RunFlags {
  std::string benchmark = "wordnet";
  std::string format = "code";
  std::size_t shots = 1;
  std::string filter = "auto";
  double filter_ratio = 0.5;
  std::string demos = "similarity";
  std::string defs = "on";
  std::string explain = "off";
  std::string model = "gpt-4o";
  std::uint64_t seed = 42;
  double split_fraction = 0.2;
  double temperature = 0.0;
  int max_tokens = 256;
  std::string out;
  std::string mock;
  std::string api_base = "https://api.openai.com/v1";
  double rate_limit = 0;
  std::string embedder = "auto";
  std::string embed_url;
  std::string tokenizer = "cl100k_base";
  std::string wup = "anchor";
  std::size_t workers = 4;
  bool dump_prompts = false;
  int max_attempts = 5;
  int retry_base_ms = 1000;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--benchmark,-b", f.benchmark, "Benchmark name or path")->capture_default_str();
  cmd->add_option("--format", f.format, "Prompt format")->check(CLI::IsMember({"code", "nl"}))->capture_default_str();
  cmd->add_option("--shots", f.shots, "Demonstrations per prompt")->capture_default_str();
  cmd->add_option("--filter", f.filter, "Semantic similarity filter")
      ->check(CLI::IsMember({"on", "off", "auto"}))
      ->capture_default_str();
  cmd->add_option("--filter-ratio", f.filter_ratio, "Share of entities kept by the filter")->capture_default_str();
  cmd->add_option("--demos", f.demos, "Demonstration selection")
      ->check(CLI::IsMember({"similarity", "random"}))
      ->capture_default_str();
  cmd->add_option("--defs", f.defs, "Include definitions")->check(CLI::IsMember({"on", "off"}))->capture_default_str();
  cmd->add_option("--explain", f.explain, "Ask for an explanation comment")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  cmd->add_option("--model", f.model, "Model tag passed to the backend")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Random seed (split and random demos)")->capture_default_str();
  cmd->add_option("--split-fraction", f.split_fraction, "Share of leaves held out")->capture_default_str();
  cmd->add_option("--temperature", f.temperature)->capture_default_str();
  cmd->add_option("--max-tokens", f.max_tokens, "Completion token limit")->capture_default_str();
  cmd->add_option("--out,-o", f.out, "Output directory")->required();
  cmd->add_option("--mock", f.mock, "'oracle' or a mock fixture JSON file instead of a live backend");
  cmd->add_option("--api-base", f.api_base, "OpenAI-compatible base URL")->capture_default_str();
  cmd->add_option("--rate-limit", f.rate_limit, "Requests per second to the backend (0 = unlimited)");
  cmd->add_option("--embedder", f.embedder, "Embedding provider")
      ->check(CLI::IsMember({"auto", "hashing", "http"}))
      ->capture_default_str();
  cmd->add_option("--embed-url", f.embed_url, "Embedding service URL (default: $TAXO_EMBED_URL)");
  cmd->add_option("--tokenizer", f.tokenizer, "Tokenizer for prompt token counts")->capture_default_str();
  cmd->add_option("--wup", f.wup, "Wu&P between anchors or attached positions")
      ->check(CLI::IsMember({"anchor", "attached"}))
      ->capture_default_str();
  cmd->add_option("--workers", f.workers, "Concurrent queries")->capture_default_str();
  cmd->add_flag("--dump-prompts", f.dump_prompts, "Write every rendered prompt under prompts/");
  cmd->add_option("--max-attempts", f.max_attempts, "Attempts per LLM request before giving up")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--retry-base-ms", f.retry_base_ms, "First retry delay; doubles per attempt")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
}

taxo::RunConfig to_config(const RunFlags& f, const taxo::Benchmark& bench) {
  taxo::RunConfig c;
  c.benchmark = f.benchmark;
  c.format = taxo::parse_format(f.format);
  c.shots = f.shots;
  c.filter_enabled = f.filter == "auto" ? taxo::default_filter_enabled(bench) : parse_switch("--filter", f.filter);
  c.filter_ratio = f.filter_ratio;
  c.demos = taxo::parse_demo_selection(f.demos);
  c.defs_enabled = parse_switch("--defs", f.defs);
  c.explain_enabled = parse_switch("--explain", f.explain);
  c.model_tag = f.model;
  c.seed = f.seed;
  c.split_fraction = f.split_fraction;
  c.temperature = f.temperature;
  c.max_output_tokens = f.max_tokens;
  c.tokenizer = f.tokenizer;
  c.wup_attached = f.wup == "attached";
  c.output_dir = f.out;
  c.workers = f.workers;
  c.dump_prompts = f.dump_prompts;
  return c;
}

std::shared_ptr<taxo::EmbeddingProvider> make_embedder(const RunFlags& f) {
  std::string url = f.embed_url;
  if (url.empty()) {
    if (const char* env = std::getenv("TAXO_EMBED_URL"); env != nullptr) url = env;
  }
  if (f.embedder == "hashing") return std::make_shared<taxo::HashingEmbeddingProvider>();
  if (f.embedder == "http" || !url.empty()) {
    if (url.empty()) throw taxo::InvalidConfig("--embedder http needs --embed-url or TAXO_EMBED_URL");
    auto http = std::make_shared<taxo::HttpEmbeddingProvider>(url);
    if (http->healthy()) return http;
    if (f.embedder == "http") throw taxo::EmbeddingServiceUnavailable("embedding service at " + url + " is not healthy");
    log_line("embedding service at " + url + " is not healthy; using the hashing embedder");
  }
  return std::make_shared<taxo::HashingEmbeddingProvider>();
}

// Wires gateway and embedding client with caches under `cache_dir`.
taxo::RunEnvironment make_environment(const RunFlags& f, taxo::RunConfig& cfg, const taxo::Benchmark& bench,
                                      const fs::path& cache_dir) {
  taxo::GatewayOptions g;
  g.cache_dir = cache_dir / "llm";
  g.max_attempts = f.max_attempts;
  g.retry_base = std::chrono::milliseconds(f.retry_base_ms);
  auto gateway = std::make_shared<taxo::LlmGateway>(g);
  std::optional<taxo::RateLimit> rate;
  if (f.rate_limit > 0) rate = taxo::RateLimit{f.rate_limit, 1};
  if (f.mock == "oracle") {
    auto splits = taxo::prepare_splits(bench, cfg.split_fraction, cfg.seed);
    gateway->register_backend("*", taxo::register_mock(taxo::oracle_rules(splits)), rate);
    cfg.backend = "mock:oracle";
  } else if (!f.mock.empty()) {
    gateway->register_backend("*", taxo::load_mock_fixture(f.mock), rate);
    cfg.backend = "mock:" + taxo::sha256_hex(taxo::read_file(f.mock)).substr(0, 16);
  } else {
    taxo::OpenAiBackend::Options o;
    o.base_url = f.api_base;
    gateway->register_backend("*", std::make_shared<taxo::OpenAiBackend>(o), rate);
    cfg.backend = "openai:" + f.api_base;
  }
  auto cache = std::make_shared<taxo::EmbeddingCache>();
  cache->load(cache_dir / "embeddings.jsonl");
  auto client = std::make_shared<taxo::EmbeddingClient>(make_embedder(f), cache);
  return taxo::RunEnvironment{gateway, client, log_line};
}

void print_summary(const taxo::EvalReport& r) {
  std::cout << "queries: " << r.per_query.size() << "\n"
            << "accuracy: " << taxo::percent(r.accuracy) << "\n"
            << "wu&p: " << taxo::percent(r.wu_palmer_mean) << "\n"
            << "mean prompt tokens (" << r.token_stats.tokenizer << "): " << r.token_stats.mean_rendered_tokens << "\n";
  for (const auto& [k, v] : r.hit_at_k) std::cout << "hit@" << k << ": " << taxo::percent(v) << "\n";
  for (const auto& [s, n] : r.status_counts) std::cout << "status " << s << ": " << n << "\n";
}

int exit_for(const taxo::EvalReport& r) {
  auto it = r.status_counts.find("backend_unavailable");
  return it != r.status_counts.end() && it->second > 0 ? kExitBackend : 0;
}

int cmd_ingest(const std::string& input, const std::string& format, const std::string& definitions,
               const std::string& out) {
  taxo::Taxonomy t = [&] {
    if (format == "canonical") return taxo::read_canonical(input);
    fs::path pairs = input;
    std::optional<fs::path> defs;
    if (fs::is_directory(pairs)) {
      if (fs::exists(pairs / "definitions.tsv")) defs = pairs / "definitions.tsv";
      pairs /= "pairs.tsv";
    }
    if (!definitions.empty()) defs = definitions;
    taxo::LoadReport report;
    try {
      auto loaded = taxo::load_pair_files(pairs, defs, &report);
      for (const auto& e : report.dropped_edges) {
        log_line("dropped extra parent edge: " + e.child + " -> " + e.parent);
      }
      nlohmann::ordered_json s;
      s["edges_read"] = report.edges_read;
      s["dropped_edges"] = report.dropped_edges.size();
      std::cout << s.dump() << "\n";
      return loaded;
    } catch (const taxo::DataError&) {
      for (const auto& d : report.diagnostics) std::cerr << d << "\n";
      throw;
    }
  }();
  const auto st = taxo::stats(t);
  nlohmann::ordered_json s;
  s["concepts"] = st.concepts;
  s["edges"] = st.edges;
  s["depth"] = st.depth;
  std::cout << s.dump() << "\n";
  if (!out.empty()) taxo::write_canonical(t, out);
  return 0;
}

int cmd_split(const std::string& benchmark, double fraction, std::uint64_t seed, const std::string& out) {
  const auto bench = taxo::load_benchmark(benchmark);
  for (const auto& st : taxo::prepare_splits(bench, fraction, seed)) {
    const fs::path dir = fs::path(out) / st.name;
    taxo::write_canonical(st.split.seed_taxonomy, dir / "seed.jsonl");
    std::string q;
    for (const auto& qi : st.split.queries) {
      nlohmann::ordered_json j;
      j["id"] = qi.query.id.str();
      j["term"] = qi.query.term;
      j["definition"] = qi.query.definition;
      j["gold_parent"] = qi.gold_parent.str();
      q += j.dump() + "\n";
    }
    taxo::write_file_atomically(dir / "queries.jsonl", q);
    std::cout << st.name << ": " << st.original.leaves().size() << " leaves, " << st.split.queries.size()
              << " queries\n";
  }
  return 0;
}

int cmd_report(const std::vector<std::string>& files) {
  std::cout << "| Report | Queries | Acc | Wu&P | Mean prompt tokens |\n|---|--:|--:|--:|--:|\n";
  for (const auto& f : files) {
    const auto r = taxo::load_report(f);
    std::cout << "| " << f << " | " << r.per_query.size() << " | " << taxo::percent(r.accuracy) << " | "
              << taxo::percent(r.wu_palmer_mean) << " | " << r.token_stats.mean_rendered_tokens << " |\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Taxonomy expansion with code-language prompts"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML/INI file");

  std::string ingest_input, ingest_format = "semeval-pairs", ingest_defs, ingest_out;
  auto* ingest = app.add_subcommand("ingest", "Convert a dataset into the canonical JSON-lines format");
  ingest->add_option("input", ingest_input, "Pair file, directory or canonical file")->required();
  ingest->add_option("--format", ingest_format)->check(CLI::IsMember({"semeval-pairs", "canonical"}))->capture_default_str();
  ingest->add_option("--definitions", ingest_defs, "term<TAB>definition file");
  ingest->add_option("--out,-o", ingest_out, "Canonical output file");

  std::string split_bench = "wordnet", split_out;
  double split_fraction = 0.2;
  std::uint64_t split_seed = 42;
  auto* split = app.add_subcommand("split", "Hold out leaves as queries");
  split->add_option("--benchmark,-b", split_bench)->capture_default_str();
  split->add_option("--fraction", split_fraction)->capture_default_str();
  split->add_option("--seed", split_seed)->capture_default_str();
  split->add_option("--out,-o", split_out)->required();

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "Run one configuration over a benchmark");
  add_run_flags(run, run_flags);

  RunFlags grid_flags;
  std::vector<std::string> axes;
  auto* grid = app.add_subcommand("grid", "Run an ablation grid");
  add_run_flags(grid, grid_flags);
  grid->add_option("--axes", axes, "Toggles to vary: shots, format, defs, demos, filter")->delimiter(',')->required();

  std::vector<std::string> report_files;
  auto* report = app.add_subcommand("report", "Summarize report.json files");
  report->add_option("files", report_files)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*ingest) return cmd_ingest(ingest_input, ingest_format, ingest_defs, ingest_out);
    if (*split) return cmd_split(split_bench, split_fraction, split_seed, split_out);
    if (*report) return cmd_report(report_files);
    if (*run) {
      const auto bench = taxo::load_benchmark(run_flags.benchmark);
      auto cfg = to_config(run_flags, bench);
      auto env = make_environment(run_flags, cfg, bench, cfg.output_dir / "cache");
      const auto r = taxo::run_benchmark(cfg, bench, env);
      env.embeddings->cache().save(cfg.output_dir / "cache" / "embeddings.jsonl");
      print_summary(r);
      const auto stats = env.gateway->stats();
      log_line("llm requests " + std::to_string(stats.requests) + ", cache hits " + std::to_string(stats.cache_hits) +
               ", backend calls " + std::to_string(stats.backend_calls));
      return exit_for(r);
    }
    if (*grid) {
      std::set<taxo::Axis> axis_set;
      for (const auto& a : axes) axis_set.insert(taxo::parse_axis(a));
      const auto bench = taxo::load_benchmark(grid_flags.benchmark);
      auto cfg = to_config(grid_flags, bench);
      auto env = make_environment(grid_flags, cfg, bench, cfg.output_dir / "cache");
      const auto runs = taxo::run_ablation_grid(cfg, axis_set, bench, env);
      env.embeddings->cache().save(cfg.output_dir / "cache" / "embeddings.jsonl");
      std::cout << taxo::grid_table(runs, axis_set);
      int code = 0;
      for (const auto& r : runs) code = std::max(code, exit_for(r.report));
      return code;
    }
  } catch (const taxo::InvalidConfig& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const taxo::AuthError& e) {
    std::cerr << "authentication error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const taxo::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const taxo::BackendUnavailable& e) {
    std::cerr << "backend unavailable: " << e.what() << "\n";
    return kExitBackend;
  } catch (const taxo::EmbeddingServiceUnavailable& e) {
    std::cerr << "embedding service unavailable: " << e.what() << "\n";
    return kExitBackend;
  } catch (const taxo::TaxoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
