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

#include <string>
#include <string_view>
#include <vector>

#include "taxo/prompt/identifiers.hpp"
#include "taxo/taxonomy/taxonomy.hpp"

namespace taxo {

enum class PromptFormat { code, nl };

// breadth_first: level order from the root restricted to the selected ids.
// given: the selected ids in the order supplied.
enum class ContextOrder { breadth_first, given };

std::string_view to_string(PromptFormat f);
PromptFormat parse_format(std::string_view s);  // throws InvalidConfig

// Python repr() of a str, as used inside child=[...] lists.
std::string python_repr(std::string_view s);

std::string render_instruction(PromptFormat format, bool explain);

// Import line plus the Entity class. Constant.
const std::string& render_class_definition();

struct RenderContext {
  const Taxonomy* taxonomy = nullptr;
  const IdentifierTable* identifiers = nullptr;
  PromptFormat format = PromptFormat::code;
  bool defs_enabled = true;
};

// Code: the "# Creating entities ..." comment followed by one Entity(...)
// line per selected id. NL: one "term: definition; parent: ...; children:
// [...]." line per selected id. Throws UnknownEntity.
std::string render_context(const RenderContext& ctx, const std::vector<EntityId>& selected,
                           ContextOrder order = ContextOrder::breadth_first);

// The first `shots` demos, each rendered as an answered query. Throws
// InvalidConfig when a demo has no parent or shots exceeds the list.
std::string render_demonstrations(const RenderContext& ctx, const std::vector<EntityId>& demo_ids,
                                  std::size_t shots);

// Code: "# creating query node", the query with parent=None, child=[], and
// the "# Finding the parent of query node" comment. NL: the query line and
// the answer cue.
std::string render_completion_stub(const RenderContext& ctx, const Entity& query);

// A single Entity(...) instantiation or NL description line.
std::string render_entity_line(const RenderContext& ctx, const Entity& e, bool as_query);

}  // namespace taxo
