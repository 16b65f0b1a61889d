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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taxo/prompt/identifiers.hpp"
#include "taxo/prompt/render.hpp"
#include "taxo/taxonomy/taxonomy.hpp"

namespace taxo {

struct PromptMetadata {
  std::optional<std::size_t> filter_k;  // absent when the filter is off
  std::vector<EntityId> selected_ids;
  std::vector<EntityId> demo_ids;
  bool defs_enabled = true;
  bool explain_enabled = false;
};

struct PromptBundle {
  std::string system_instruction;
  std::string class_definition;  // empty for NL
  std::string context_block;
  std::string demonstration_block;
  std::string completion_stub;
  PromptFormat format = PromptFormat::code;
  std::size_t shots = 0;
  std::string rendered;
  PromptMetadata metadata;
};

// Joins the non-empty parts with one blank line, in the order instruction,
// class definition, context, demonstrations, stub. Throws InvalidConfig if
// an NL bundle carries a class definition or a code bundle lacks one.
PromptBundle assemble(PromptFormat format, std::string instruction, std::string class_definition,
                      std::string context, std::string demonstrations, std::string stub,
                      std::size_t shots, PromptMetadata metadata = {});

// Splits a rendered prompt back into its parts. Returns nullopt when the
// text does not have the expected block structure.
std::optional<PromptBundle> parse_bundle(std::string_view rendered, PromptFormat format);

struct PromptOptions {
  PromptFormat format = PromptFormat::code;
  bool defs_enabled = true;
  bool explain_enabled = false;
  std::size_t shots = 0;
  ContextOrder order = ContextOrder::breadth_first;
};

// Renders a complete prompt for `query` over `t`. `selected` is the context
// entity set (all of t when the filter is off); `demo_ids` must hold at
// least options.shots entries. Identifiers are assigned over all of t.
PromptBundle build_prompt(const Taxonomy& t, const IdentifierTable& identifiers, const Entity& query,
                          const std::vector<EntityId>& selected, const std::vector<EntityId>& demo_ids,
                          const PromptOptions& options, std::optional<std::size_t> filter_k = {});

}  // namespace taxo
