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

#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

#include "doctest.h"
#include "taxo/core/errors.hpp"
#include "taxo/core/paths.hpp"
#include "taxo/taxonomy/canonical_io.hpp"
#include "taxo/taxonomy/loader.hpp"
#include "taxo/taxonomy/split.hpp"
#include "test_support.hpp"

using namespace taxo;
namespace fs = std::filesystem;

namespace {

EntityRecord rec(const char* id, std::optional<const char*> parent, const char* def = "") {
  EntityRecord r{EntityId(id), id, def, std::nullopt};
  if (parent) r.parent = EntityId(*parent);
  return r;
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("taxo-taxonomy-test-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& s) {
  std::ofstream(p, std::ios::binary) << s;
}

std::vector<EntityRecord> sorted_records(const Taxonomy& t) {
  auto r = t.records();
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return r;
}

}  // namespace

TEST_CASE("from_records rejects malformed input") {
  CHECK_THROWS_AS(Taxonomy::from_records({}), MalformedTaxonomy);
  CHECK_THROWS_AS(Taxonomy::from_records({rec("a", {}), rec("a", {})}), MalformedTaxonomy);
  CHECK_THROWS_AS(Taxonomy::from_records({rec("a", {}), rec("b", "zzz")}), MalformedTaxonomy);
  CHECK_THROWS_AS(Taxonomy::from_records({rec("a", {}), rec("b", {})}), MalformedTaxonomy);
  CHECK_THROWS_AS(Taxonomy::from_records({rec("a", "a")}), MalformedTaxonomy);
  // b <-> c cycle next to a real root
  CHECK_THROWS_AS(Taxonomy::from_records({rec("a", {}), rec("b", "c"), rec("c", "b")}), MalformedTaxonomy);
  CHECK_THROWS_AS(Taxonomy::from_records({rec("", {})}), MalformedTaxonomy);
}

TEST_CASE("insanity fixture structure") {
  const Taxonomy t = test::insanity();
  CHECK(t.size() == 11);
  CHECK(t.root() == EntityId("insanity"));
  CHECK(t.depth(EntityId("insanity")) == 1);
  CHECK(t.depth(EntityId("Pick's disease")) == 4);
  CHECK(t.max_depth() == 4);
  CHECK(t.lca(EntityId("Pick's disease"), EntityId("senile dementia")) == EntityId("dementia"));
  CHECK(t.lca(EntityId("lunacy"), EntityId("lunacy")) == EntityId("lunacy"));
  CHECK(t.lca(EntityId("dementia"), EntityId("Pick's disease")) == EntityId("dementia"));
  const auto& dementia = t.at(EntityId("dementia"));
  REQUIRE(dementia.children.size() == 3);
  CHECK(dementia.children[0] == EntityId("presenile dementia"));
  CHECK(t.leaves().size() == 8);
  const auto bfs = t.breadth_first();
  CHECK(bfs.front() == EntityId("insanity"));
  CHECK(bfs[1] == EntityId("irrationality"));
  CHECK(bfs.back() == EntityId("Pick's disease"));
  CHECK_THROWS_AS(t.at(EntityId("nope")), UnknownEntity);
  CHECK_THROWS_AS(t.depth(EntityId("nope")), UnknownEntity);
  CHECK(t.edges().size() == 10);
}

TEST_CASE("depth and lca agree with ancestor sets on random trees") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = test::random_tree(rng, 1 + bounded_draw(rng, 40));
    for (const auto& a : t.entities()) {
      CHECK(t.depth(a.id) == test::brute_depth(t, a.id));
      for (const auto& b : t.entities()) CHECK(t.lca(a.id, b.id) == test::brute_lca(t, a.id, b.id));
    }
  }
}

TEST_CASE("attach and without_leaves") {
  const Taxonomy t = test::insanity();
  Entity q{EntityId("new"), "new thing", "", EntityId("lunacy"), {EntityId("x")}};
  const auto t2 = t.attach(q, EntityId("dementia"));
  CHECK(t2.size() == t.size() + 1);
  CHECK(*t2.at(EntityId("new")).parent == EntityId("dementia"));
  CHECK(t2.at(EntityId("new")).children.empty());
  CHECK(t2.at(EntityId("dementia")).children.back() == EntityId("new"));
  CHECK(t.size() == 11);  // original untouched
  CHECK_THROWS_AS(t.attach(q, EntityId("nope")), UnknownEntity);
  CHECK_THROWS_AS(t2.attach(q, EntityId("dementia")), DuplicateEntity);

  const auto t3 = t.without_leaves({EntityId("lunacy"), EntityId("Pick's disease")});
  CHECK(t3.size() == 9);
  CHECK(t3.at(EntityId("presenile dementia")).children == std::vector<EntityId>{EntityId("Alzheimer's disease")});
  CHECK_THROWS_AS(t.without_leaves({EntityId("dementia")}), InvalidConfig);
}

TEST_CASE("canonical JSON-lines round-trip is byte identical") {
  const std::string text = read_file(test::fixture("insanity.jsonl"));
  const auto records = parse_canonical_jsonl(text);
  CHECK(records.size() == 11);
  CHECK(to_canonical_jsonl(records) == text);
  const auto out = scratch("roundtrip.jsonl");
  write_canonical(Taxonomy::from_records(records), out);
  CHECK(read_file(out) == text);
  CHECK_THROWS_AS(parse_canonical_jsonl("{\"id\": 1}\n"), DataError);
  CHECK_THROWS_AS(parse_canonical_jsonl("not json\n"), DataError);
  write(scratch("empty.jsonl"), "");
  CHECK_THROWS_AS(read_canonical(scratch("empty.jsonl")), DataError);
}

TEST_CASE("load_taxonomy from edges") {
  LoadReport report;
  const auto t = load_taxonomy({{"b", "a"}, {"c", "a"}, {"d", "b"}, {"d", "c"}}, {{"a", "root def"}}, &report);
  CHECK(t.size() == 4);
  CHECK(t.root() == EntityId("a"));
  CHECK(t.at(EntityId("a")).definition == "root def");
  CHECK(t.at(EntityId("b")).definition.empty());
  CHECK(*t.at(EntityId("d")).parent == EntityId("b"));
  REQUIRE(report.dropped_edges.size() == 1);
  CHECK(report.dropped_edges[0].parent == "c");
  CHECK(report.edges_read == 4);
  CHECK_THROWS_AS(load_taxonomy({{"a", "a"}}, {}), MalformedTaxonomy);

  // keys sharing a surface term get suffixed ids
  const std::map<std::string, std::string> terms{{"k1", "root"}, {"k2", "down"}, {"k3", "down"}};
  const auto t2 = load_taxonomy({{"k2", "k1"}, {"k3", "k1"}}, {}, nullptr, &terms);
  CHECK(t2.contains(EntityId("down")));
  CHECK(t2.contains(EntityId("down#2")));
  CHECK(t2.at(EntityId("down#2")).term == "down");
}

TEST_CASE("pair files: diagnostics and stats") {
  const auto pairs = scratch("pairs.tsv");
  write(pairs, "b\ta\nc\ta\n\nd\tb\n");
  write(scratch("defs.tsv"), "a\tthe root\n");
  const auto t = load_pair_files(pairs, scratch("defs.tsv"));
  const auto st = stats(t);
  CHECK(st.concepts == 4);
  CHECK(st.edges == 3);
  CHECK(st.depth == 3);
  CHECK(t.at(EntityId("a")).definition == "the root");

  write(scratch("bad.tsv"), "b\ta\nno tab here\n\tx\n");
  const auto rows = read_tsv_pairs(scratch("bad.tsv"));
  CHECK(rows.rows.size() == 1);
  REQUIRE(rows.diagnostics.size() == 2);
  CHECK(rows.diagnostics[0].find(":2:") != std::string::npos);
  CHECK_THROWS_AS(load_pair_files(scratch("bad.tsv"), std::nullopt), DataError);

  write(scratch("empty.tsv"), "");
  CHECK_THROWS_AS(load_pair_files(scratch("empty.tsv"), std::nullopt), DataError);
  CHECK_THROWS_AS(load_pair_files(scratch("missing.tsv"), std::nullopt), DataError);
}

TEST_CASE("shipped SemEval-Env stand-in matches the published shape") {
  const auto dir = data_dir() / "benchmarks" / "semeval-env";
  const auto st = stats(load_pair_files(dir / "pairs.tsv", dir / "definitions.tsv"));
  CHECK(st.concepts == 261);
  CHECK(st.depth == 6);
}

TEST_CASE("split_leaves") {
  CHECK(query_count(0.2, 10) == 2);
  CHECK(query_count(0.2, 4) == 1);
  CHECK(query_count(0.2, 14) == 2);
  const Taxonomy t = test::insanity();
  const auto s1 = split_leaves(t, 0.2, 42);
  const auto s2 = split_leaves(t, 0.2, 42);
  REQUIRE(s1.queries.size() == 1);
  CHECK(s1.queries[0].query.id == s2.queries[0].query.id);
  CHECK(s1.seed_taxonomy.size() == 10);
  CHECK(!s1.seed_taxonomy.contains(s1.queries[0].query.id));
  CHECK(!s1.queries[0].query.parent);
  CHECK(sorted_records(reattach(s1)) == sorted_records(t));
  CHECK_THROWS_AS(split_leaves(t, 0.0, 1), InvalidConfig);
  CHECK_THROWS_AS(split_leaves(t, 1.0, 1), InvalidConfig);
  CHECK_THROWS_AS(split_leaves(Taxonomy::from_records({rec("a", {})}), 0.5, 1), InvalidConfig);

  // different seeds eventually pick different leaves
  std::set<EntityId> picked;
  for (std::uint64_t s = 0; s < 32; ++s) picked.insert(split_leaves(t, 0.2, s).queries[0].query.id);
  CHECK(picked.size() > 3);
}

TEST_CASE("bounded_draw stays in range") {
  std::mt19937_64 rng(1);
  for (std::uint64_t b = 1; b < 100; ++b) CHECK(bounded_draw(rng, b) < b);
}
