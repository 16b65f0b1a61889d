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

#include "taxo/prompt/identifiers.hpp"
#include "taxo/prompt/render.hpp"

namespace taxo {

std::vector<MockRule> oracle_rules(const std::vector<SplitTaxonomy>& splits) {
  std::vector<MockRule> rules;
  for (const auto& st : splits) {
    const Taxonomy& seed = st.split.seed_taxonomy;
    for (const auto& q : st.split.queries) {
      const IdentifierTable ids(seed, &q.query);
      const std::string code_answer = ids.of(q.query.id) + ".add_parent(" + ids.of(q.gold_parent) + ")";
      for (bool defs : {true, false}) {
        RenderContext code{&seed, &ids, PromptFormat::code, defs};
        rules.push_back({"\n\n" + render_completion_stub(code, q.query), code_answer, MatchMode::suffix});
      }
      RenderContext nl{&seed, &ids, PromptFormat::nl, true};
      rules.push_back({"\n\n" + render_completion_stub(nl, q.query), seed.at(q.gold_parent).term, MatchMode::suffix});
    }
  }
  return rules;
}

}  // namespace taxo
