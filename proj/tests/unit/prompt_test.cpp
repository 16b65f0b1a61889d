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

#include <set>

#include "doctest.h"
#include "json.hpp"
#include "taxo/core/errors.hpp"
#include "taxo/core/paths.hpp"
#include "taxo/prompt/bundle.hpp"
#include "taxo/prompt/identifiers.hpp"
#include "taxo/prompt/render.hpp"
#include "taxo/prompt/tokenizer.hpp"
#include "test_support.hpp"

using namespace taxo;

namespace {

// Context order of the listed golden files.
const std::vector<EntityId> kListed{
    EntityId("lunacy"),         EntityId("irrationality"), EntityId("dementia"),
    EntityId("alcoholic dementia"), EntityId("Pick's disease"), EntityId("derangement"),
    EntityId("craziness"),      EntityId("presenile dementia"), EntityId("senile dementia"),
    EntityId("insanity")};

PromptBundle render_insanity(PromptFormat f, ContextOrder order, bool defs = true, std::size_t shots = 0,
                             std::vector<EntityId> demos = {}) {
  const auto iq = test::insanity_query();
  const IdentifierTable ids(iq.seed, &iq.query);
  PromptOptions o;
  o.format = f;
  o.order = order;
  o.defs_enabled = defs;
  o.shots = shots;
  const auto selected = order == ContextOrder::given ? kListed : iq.seed.breadth_first();
  return build_prompt(iq.seed, ids, iq.query, selected, demos, o);
}

}  // namespace

TEST_CASE("golden prompts") {
  CHECK(render_insanity(PromptFormat::code, ContextOrder::given).rendered ==
        read_file(test::fixture("golden/code_insanity_listed.txt")));
  CHECK(render_insanity(PromptFormat::code, ContextOrder::breadth_first).rendered ==
        read_file(test::fixture("golden/code_insanity_bfs.txt")));
  CHECK(render_insanity(PromptFormat::nl, ContextOrder::given).rendered ==
        read_file(test::fixture("golden/nl_insanity_listed.txt")));
  CHECK(render_insanity(PromptFormat::nl, ContextOrder::breadth_first).rendered ==
        read_file(test::fixture("golden/nl_insanity_bfs.txt")));
}

TEST_CASE("sanitize_identifier") {
  CHECK(sanitize_identifier("Pick's disease") == "Pick_s_disease");
  CHECK(sanitize_identifier("presenile dementia") == "presenile_dementia");
  CHECK(sanitize_identifier("3-D film") == "_3_D_film");
  CHECK(sanitize_identifier("caf\xc3\xa9 au lait") == "caf__au_lait");
  CHECK(sanitize_identifier("class") == "class_");
  CHECK(sanitize_identifier("None") == "None_");
  CHECK(sanitize_identifier("") == "_");
}

TEST_CASE("identifier table resolves collisions") {
  const auto t = Taxonomy::from_records({{EntityId("r"), "a b", "", std::nullopt},
                                         {EntityId("x"), "a-b", "", EntityId("r")},
                                         {EntityId("y"), "a_b", "", EntityId("r")}});
  const Entity q{EntityId("q"), "a.b", "", std::nullopt, {}};
  const IdentifierTable ids(t, &q);
  CHECK(ids.of(EntityId("r")) == "a_b");
  CHECK(ids.of(EntityId("x")) == "a_b_2");
  CHECK(ids.of(EntityId("y")) == "a_b_3");
  CHECK(ids.of(EntityId("q")) == "a_b_4");
  CHECK(ids.anchors().size() == 3);
  CHECK(!ids.anchors().contains("a_b_4"));
  CHECK_THROWS_AS(ids.of(EntityId("zz")), UnknownEntity);
  std::set<std::string> unique;
  for (const auto& [name, id] : ids.anchors()) unique.insert(name);
  CHECK(unique.size() == 3);
}

TEST_CASE("python_repr") {
  CHECK(python_repr("abc") == "'abc'");
  CHECK(python_repr("Pick's disease") == "\"Pick's disease\"");
  CHECK(python_repr("a\\b") == "'a\\\\b'");
  CHECK(python_repr("it's \"x\"") == "'it\\'s \"x\"'");
}

TEST_CASE("instructions with and without explanations") {
  const auto plain = render_instruction(PromptFormat::code, false);
  const auto explain = render_instruction(PromptFormat::code, true);
  CHECK(plain.find("do NOT generate node that is NOT in the given current taxonomy") != std::string::npos);
  CHECK(explain.find("comment") != std::string::npos);
  CHECK(explain != plain);
  CHECK(render_instruction(PromptFormat::nl, true) != render_instruction(PromptFormat::nl, false));
  CHECK(parse_format("code") == PromptFormat::code);
  CHECK(parse_format("nl") == PromptFormat::nl);
  CHECK_THROWS_AS(parse_format("yaml"), InvalidConfig);
}

TEST_CASE("definitions off drops descriptions") {
  const auto b = render_insanity(PromptFormat::code, ContextOrder::breadth_first, false);
  CHECK(b.rendered.find("insanity = Entity(name='insanity', description='', parent=None") != std::string::npos);
  CHECK(b.rendered.find("relatively permanent") == std::string::npos);
  const auto n = render_insanity(PromptFormat::nl, ContextOrder::breadth_first, false);
  CHECK(n.rendered.find("relatively permanent") == std::string::npos);
  CHECK(n.rendered.find("insanity; parent: None") != std::string::npos);
}

TEST_CASE("demonstrations") {
  const std::vector<EntityId> demos{EntityId("senile dementia"), EntityId("lunacy")};
  const auto code = render_insanity(PromptFormat::code, ContextOrder::breadth_first, true, 2, demos);
  CHECK(code.rendered.find("senile_dementia.add_parent(dementia)") != std::string::npos);
  CHECK(code.rendered.find("lunacy.add_parent(insanity)") != std::string::npos);
  CHECK(code.rendered.find("senile_dementia.add_parent") < code.rendered.find("lunacy.add_parent"));
  CHECK(code.metadata.demo_ids == demos);
  const auto one = render_insanity(PromptFormat::code, ContextOrder::breadth_first, true, 1, demos);
  CHECK(one.rendered.find("lunacy.add_parent") == std::string::npos);
  const auto nl = render_insanity(PromptFormat::nl, ContextOrder::breadth_first, true, 1, demos);
  CHECK(nl.rendered.find("The parent of query node: dementia") != std::string::npos);

  CHECK_THROWS_AS(render_insanity(PromptFormat::code, ContextOrder::breadth_first, true, 3, demos), InvalidConfig);
  CHECK_THROWS_AS(render_insanity(PromptFormat::code, ContextOrder::breadth_first, true, 1, {EntityId("insanity")}),
                  InvalidConfig);
}

TEST_CASE("bundle assembly and parsing round-trip") {
  for (auto f : {PromptFormat::code, PromptFormat::nl}) {
    const auto b = render_insanity(f, ContextOrder::breadth_first, true, 2,
                                   {EntityId("senile dementia"), EntityId("lunacy")});
    const auto parsed = parse_bundle(b.rendered, f);
    REQUIRE(parsed);
    CHECK(parsed->system_instruction == b.system_instruction);
    CHECK(parsed->class_definition == b.class_definition);
    CHECK(parsed->context_block == b.context_block);
    CHECK(parsed->demonstration_block == b.demonstration_block);
    CHECK(parsed->completion_stub == b.completion_stub);
    CHECK(parsed->shots == 2);
  }
  CHECK(!parse_bundle("no structure", PromptFormat::code));
  CHECK_THROWS_AS(assemble(PromptFormat::nl, "i", "class", "c", "", "s", 0), InvalidConfig);
  CHECK_THROWS_AS(assemble(PromptFormat::code, "i", "", "c", "", "s", 0), InvalidConfig);
  CHECK(assemble(PromptFormat::nl, "i", "", "", "", "s", 0).rendered == "i\n\ns");
}

TEST_CASE("filtered context keeps breadth-first order and metadata") {
  const auto iq = test::insanity_query();
  const IdentifierTable ids(iq.seed, &iq.query);
  PromptOptions o;
  const std::vector<EntityId> sel{EntityId("senile dementia"), EntityId("insanity")};
  const auto b = build_prompt(iq.seed, ids, iq.query, sel, {}, o, 2);
  CHECK(b.rendered.find("insanity = Entity") < b.rendered.find("senile_dementia = Entity"));
  CHECK(b.rendered.find("lunacy = Entity") == std::string::npos);
  CHECK(b.metadata.filter_k == 2u);
  CHECK(b.metadata.selected_ids.size() == 2);
}

TEST_CASE("cl100k token counts match the frozen reference") {
  const auto cases = nlohmann::json::parse(read_file(test::fixture("token_counts.json")));
  REQUIRE(cases.size() > 50);
  const auto& tk = tokenizer("cl100k_base");
  for (const auto& c : cases) {
    const auto text = c.at("text").get<std::string>();
    INFO(text.substr(0, 80));
    CHECK(tk.count(text) == c.at("tokens").get<std::size_t>());
  }
  CHECK(count_tokens("hello world") == 2);
  CHECK(count_tokens("abcdefgh", "chars4") == 2);
  CHECK(count_tokens("abcdefghi", "chars4") == 3);
  CHECK_THROWS_AS(tokenizer("nope"), InvalidConfig);
}

TEST_CASE("pretokenize splits like the cl100k pattern") {
  const auto p = pretokenize("Hello world's 12345 !!\n\n x");
  std::vector<std::string> s(p.begin(), p.end());
  CHECK(s == std::vector<std::string>{"Hello", " world", "'s", " ", "123", "45", " !!\n\n", " x"});
}
