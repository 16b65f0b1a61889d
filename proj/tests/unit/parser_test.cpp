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

#include "doctest.h"
#include "taxo/parser/anchor_index.hpp"
#include "taxo/parser/completion_parser.hpp"
#include "taxo/prompt/identifiers.hpp"
#include "test_support.hpp"

using namespace taxo;

namespace {

struct Fixture {
  test::InsanityQuery iq = test::insanity_query();
  IdentifierTable ids{iq.seed, &iq.query};
  AnchorIndex index{iq.seed, IdentifierTable(iq.seed, nullptr)};
};

}  // namespace

TEST_CASE("normalize_name") {
  CHECK(normalize_name("Pick's_disease") == "pick s disease");
  CHECK(normalize_name("  Senile   DEMENTIA. ") == "senile dementia");
  CHECK(normalize_name("") == "");
}

TEST_CASE("anchor index match ladder") {
  Fixture f;
  auto m = f.index.by_identifier("presenile_dementia");
  REQUIRE(m);
  CHECK(m->id == EntityId("presenile dementia"));
  CHECK(m->rung == MatchRung::exact);
  m = f.index.by_identifier("Presenile_Dementia");
  REQUIRE(m);
  CHECK(m->rung == MatchRung::case_insensitive);
  m = f.index.by_identifier("pick's disease");
  REQUIRE(m);
  CHECK(m->id == EntityId("Pick's disease"));
  CHECK(m->rung == MatchRung::normalized);
  CHECK(!f.index.by_identifier("Alzheimer_s_disease"));  // the query is not an anchor
  CHECK(f.index.by_term("senile dementia")->id == EntityId("senile dementia"));
  CHECK(f.index.longest_term_in("probably a kind of senile dementia, I think") == EntityId("senile dementia"));
  CHECK(!f.index.longest_term_in("nothing relevant"));
}

TEST_CASE("ambiguous terms resolve to the first entity and are flagged") {
  const AnchorIndex idx({}, {{"down", EntityId("down")}, {"down", EntityId("down#2")}});
  const auto m = idx.by_term("down");
  REQUIRE(m);
  CHECK(m->id == EntityId("down"));
  CHECK(m->ambiguous);
}

TEST_CASE("code completions") {
  Fixture f;
  auto p = parse_code_completion("Alzheimer_s_disease.add_parent(presenile_dementia)", f.index);
  CHECK(p.status == ParseStatus::ok);
  CHECK(p.anchor == EntityId("presenile dementia"));
  CHECK(!p.fuzzy);

  p = parse_code_completion("  Alzheimer_s_disease.add_parent('dementia')\nmore.add_parent(lunacy)", f.index);
  CHECK(p.anchor == EntityId("dementia"));

  p = parse_code_completion("x.add_parent(dementia)  # it is a dementia", f.index);
  CHECK(p.status == ParseStatus::ok);
  REQUIRE(p.explanation);
  CHECK(*p.explanation == "it is a dementia");
  p = parse_code_completion("x.add_parent(dementia)\n# because", f.index);
  CHECK(p.explanation == std::optional<std::string>("because"));

  CHECK(parse_code_completion("x.add_parent(neurosis)", f.index).status == ParseStatus::not_in_taxonomy);
  CHECK(parse_code_completion("x.add_parent(Alzheimer_s_disease)", f.index).status == ParseStatus::not_in_taxonomy);
  CHECK(parse_code_completion("x.add_parent()", f.index).status == ParseStatus::unparseable);
  CHECK(parse_code_completion("", f.index).status == ParseStatus::empty);
  CHECK(parse_code_completion(" \n\t ", f.index).status == ParseStatus::empty);
  CHECK(parse_code_completion("I cannot help with that.", f.index).status == ParseStatus::unparseable);

  p = parse_code_completion("It should go under presenile dementia.", f.index);
  CHECK(p.status == ParseStatus::ok);
  CHECK(p.fuzzy);
  CHECK(p.anchor == EntityId("presenile dementia"));
}

TEST_CASE("natural-language completions") {
  Fixture f;
  auto p = parse_nl_completion("presenile dementia", f.index);
  CHECK(p.status == ParseStatus::ok);
  CHECK(p.anchor == EntityId("presenile dementia"));
  p = parse_nl_completion("The parent of query node: 'Dementia'.", f.index);
  CHECK(p.status == ParseStatus::ok);
  CHECK(p.anchor == EntityId("dementia"));
  CHECK(p.rung == MatchRung::case_insensitive);
  p = parse_nl_completion("dementia # close match\nextra", f.index);
  CHECK(p.anchor == EntityId("dementia"));
  CHECK(p.explanation == std::optional<std::string>("close match"));

  CHECK(parse_nl_completion("neurosis", f.index).status == ParseStatus::not_in_taxonomy);
  CHECK(parse_nl_completion("Alzheimer's disease", f.index).status == ParseStatus::not_in_taxonomy);
  CHECK(parse_nl_completion("", f.index).status == ParseStatus::empty);
  CHECK(parse_nl_completion("I am not able to determine a sensible answer here!", f.index).status ==
        ParseStatus::unparseable);
  p = parse_nl_completion("The best answer is probably senile dementia, given the description.", f.index);
  CHECK(p.status == ParseStatus::ok);
  CHECK(p.fuzzy);

  CHECK(parse_completion(PromptFormat::nl, "lunacy", f.index).anchor == EntityId("lunacy"));
  CHECK(parse_completion(PromptFormat::code, "q.add_parent(lunacy)", f.index).anchor == EntityId("lunacy"));
}
