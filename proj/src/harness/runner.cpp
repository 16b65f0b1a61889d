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

#include "taxo/harness/runner.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

#include "taxo/core/errors.hpp"
#include "taxo/core/hashing.hpp"
#include "taxo/core/paths.hpp"
#include "taxo/metrics/metrics.hpp"
#include "taxo/parser/anchor_index.hpp"
#include "taxo/parser/completion_parser.hpp"
#include "taxo/prompt/bundle.hpp"
#include "taxo/prompt/tokenizer.hpp"

namespace taxo {
namespace fs = std::filesystem;

namespace {

struct WorkItem {
  std::size_t taxonomy;
  std::size_t query;
};

struct Outcome {
  QueryResult result;
  nlohmann::ordered_json audit;
  std::string prompt;
};

std::vector<EntityId> random_demos(const Taxonomy& t, const RunConfig& cfg, const std::string& taxonomy,
                                   const EntityId& query, std::size_t n) {
  std::vector<EntityId> pool;
  for (const auto& e : t.entities()) {
    if (e.parent) pool.push_back(e.id);
  }
  std::sort(pool.begin(), pool.end());
  std::mt19937_64 rng(sha256_u64(std::to_string(cfg.seed) + ":" + taxonomy + ":" + query.str()));
  const std::size_t take = std::min(n, pool.size());
  for (std::size_t i = 0; i < take; ++i) {
    const auto j = i + static_cast<std::size_t>(bounded_draw(rng, pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(take);
  return pool;
}

// Per-taxonomy state shared by all of its queries.
struct Prepared {
  IdentifierTable identifiers;
  AnchorIndex anchors;
  std::optional<CandidateSet> candidates;  // only when the filter or similarity demos need it
};

Outcome run_query(const RunConfig& cfg, const SplitTaxonomy& st, const Prepared& prep, const QueryInstance& qi,
                  RunEnvironment& env) {
  const Taxonomy& seed = st.split.seed_taxonomy;
  const Entity& query = qi.query;
  std::vector<double> scores;
  if (prep.candidates) {
    const auto qvec = env.embeddings->embed_entities({&query}, cfg.defs_enabled).front();
    scores = candidate_scores(qvec, *prep.candidates);
  }

  Outcome out;
  QueryResult& r = out.result;
  r.taxonomy = st.name;
  r.query_id = query.id.str();
  r.query_term = query.term;
  r.gold_parent = qi.gold_parent.str();

  std::vector<EntityId> selected;
  std::optional<std::size_t> k;
  if (cfg.filter_enabled) {
    k = filter_k(cfg.filter_ratio, seed.size());
    // Rank everything once: the prefix is the filter, the gold position
    // feeds Hit@K.
    auto ranked = filter_top_k(*prep.candidates, scores, seed.size());
    r.gold_rank = rank_of(ranked.selected, qi.gold_parent);
    selected.assign(ranked.selected.begin(), ranked.selected.begin() + static_cast<std::ptrdiff_t>(*k));
  } else {
    for (const auto& e : seed.entities()) selected.push_back(e.id);
  }
  r.context_entities = selected.size();

  std::vector<EntityId> demos;
  if (cfg.shots > 0) {
    if (cfg.demos == DemoSelection::similarity) {
      demos = select_demonstrations(*prep.candidates, scores, query.id, std::max<std::size_t>(5, cfg.shots));
    } else {
      demos = random_demos(seed, cfg, st.name, query.id, cfg.shots);
    }
  }

  const IdentifierTable ids = prep.identifiers.with_query(query);
  PromptOptions opts;
  opts.format = cfg.format;
  opts.defs_enabled = cfg.defs_enabled;
  opts.explain_enabled = cfg.explain_enabled;
  opts.shots = std::min(cfg.shots, demos.size());
  const PromptBundle bundle = build_prompt(seed, ids, query, selected, demos, opts, k);
  r.rendered_tokens = count_tokens(bundle.rendered, cfg.tokenizer);
  out.prompt = bundle.rendered;

  const ChatRequest req = make_user_request(cfg.model_tag, bundle.rendered, cfg.temperature, cfg.max_output_tokens);
  auto& audit = out.audit;
  audit["taxonomy"] = st.name;
  audit["query_id"] = r.query_id;
  audit["request_id"] = req.request_id();
  audit["demo_ids"] = nlohmann::ordered_json::array();
  for (const auto& d : bundle.metadata.demo_ids) audit["demo_ids"].push_back(d.str());

  std::optional<ChatResponse> resp;
  try {
    resp = env.gateway->complete(req);
  } catch (const ContextOverflow& e) {
    r.status = "context_overflow";
    audit["error"] = e.what();
  } catch (const BackendUnavailable& e) {
    r.status = "backend_unavailable";
    audit["error"] = e.what();
  } catch (const MockMiss& e) {
    r.status = "mock_miss";
    audit["error"] = e.what();
  }

  if (resp) {
    r.prompt_tokens = resp->prompt_tokens;
    r.completion_tokens = resp->completion_tokens;
    const Prediction p = parse_completion(cfg.format, resp->text, prep.anchors);
    r.status = std::string(to_string(p.status));
    r.fuzzy = p.fuzzy;
    if (p.status == ParseStatus::ok) {
      r.predicted = p.anchor->str();
      r.correct = *p.anchor == qi.gold_parent;
      r.wup = cfg.wup_attached ? wu_palmer_attached(seed, *p.anchor, qi.gold_parent)
                               : wu_palmer(seed, *p.anchor, qi.gold_parent);
    }
    audit["raw"] = p.raw;
    audit["cached"] = resp->cached;
    audit["latency_ms"] = resp->latency_ms;
    audit["explanation"] = p.explanation ? nlohmann::ordered_json(*p.explanation) : nlohmann::ordered_json(nullptr);
    audit["flags"] = nlohmann::ordered_json::array();
    if (p.fuzzy) audit["flags"].push_back("fuzzy");
    if (p.ambiguous) audit["flags"].push_back("ambiguous");
  }
  audit["status"] = r.status;
  audit["anchor"] = r.predicted ? nlohmann::ordered_json(*r.predicted) : nlohmann::ordered_json(nullptr);
  audit["gold_parent"] = r.gold_parent;
  return out;
}

void check_existing_report(const fs::path& dir, const std::string& fingerprint) {
  const auto path = dir / "report.json";
  if (!fs::exists(path)) return;
  const auto existing = load_report(path);
  if (existing.config_fingerprint != fingerprint) {
    throw InvalidConfig(dir.string() + " already holds a report for a different configuration (" +
                        existing.config_fingerprint.substr(0, 12) + ")");
  }
}

std::string file_safe(std::string_view s) {
  std::string out;
  for (unsigned char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                    c == '_' || c == '.';
    out.push_back(ok ? static_cast<char>(c) : '_');
  }
  return out;
}

}  // namespace

EvalReport run_benchmark(RunConfig cfg, const Benchmark& benchmark, RunEnvironment& env) {
  if (!env.gateway || !env.embeddings) throw InvalidConfig("run needs a gateway and an embedding client");
  cfg.embedder = env.embeddings->model_tag();
  cfg.validate();
  (void)tokenizer(cfg.tokenizer);
  const std::string fingerprint = cfg.fingerprint();
  if (!cfg.output_dir.empty()) check_existing_report(cfg.output_dir, fingerprint);

  const auto splits = prepare_splits(benchmark, cfg.split_fraction, cfg.seed);
  const bool need_vectors = cfg.filter_enabled || (cfg.shots > 0 && cfg.demos == DemoSelection::similarity);
  std::vector<Prepared> prepared;
  std::vector<WorkItem> items;
  for (std::size_t t = 0; t < splits.size(); ++t) {
    const Taxonomy& seed = splits[t].split.seed_taxonomy;
    IdentifierTable ids(seed, nullptr);
    Prepared p{ids, AnchorIndex(seed, ids), std::nullopt};
    if (need_vectors) {
      std::vector<const Entity*> all;
      for (const auto& e : seed.entities()) all.push_back(&e);
      p.candidates = embed_candidates(*env.embeddings, all, cfg.defs_enabled);
    }
    prepared.push_back(std::move(p));
    for (std::size_t q = 0; q < splits[t].split.queries.size(); ++q) items.push_back({t, q});
  }
  if (items.empty()) throw InvalidConfig("benchmark '" + benchmark.name + "' yields no queries");

  std::vector<Outcome> outcomes(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        const auto& st = splits[items[i].taxonomy];
        outcomes[i] = run_query(cfg, st, prepared[items[i].taxonomy], st.split.queries[items[i].query], env);
      } catch (...) {
        errors[i] = std::current_exception();
        next = items.size();  // stop handing out work
      }
      const auto d = ++done;
      if (env.log && (d % 50 == 0 || d == items.size())) {
        env.log(std::to_string(d) + "/" + std::to_string(items.size()) + " queries");
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t n = std::min(cfg.workers, items.size());
    for (std::size_t w = 0; w < n; ++w) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  EvalReport report;
  report.config_fingerprint = fingerprint;
  report.config = cfg.to_json();
  report.per_query.reserve(outcomes.size());
  for (auto& o : outcomes) report.per_query.push_back(o.result);
  aggregate(report, cfg.tokenizer);

  if (!cfg.output_dir.empty()) {
    fs::create_directories(cfg.output_dir);
    std::string audit;
    for (const auto& o : outcomes) audit += o.audit.dump() + "\n";
    write_file_atomically(cfg.output_dir / "audit.jsonl", audit);
    write_file_atomically(cfg.output_dir / "report.csv", report_csv(report));
    if (cfg.dump_prompts) {
      for (const auto& o : outcomes) {
        write_file_atomically(cfg.output_dir / "prompts" / file_safe(o.result.taxonomy) /
                                  (file_safe(o.result.query_id) + ".txt"),
                              o.prompt);
      }
    }
    save_report(report, cfg.output_dir / "report.json");
  }
  return report;
}

EvalReport run_benchmark(RunConfig cfg, RunEnvironment& env) {
  const Benchmark b = load_benchmark(cfg.benchmark);
  return run_benchmark(std::move(cfg), b, env);
}

}  // namespace taxo
