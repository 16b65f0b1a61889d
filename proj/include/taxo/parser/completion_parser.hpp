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

#include <optional>
#include <string>
#include <string_view>

#include "taxo/parser/anchor_index.hpp"
#include "taxo/prompt/render.hpp"

namespace taxo {

enum class ParseStatus { ok, not_in_taxonomy, unparseable, empty };

std::string_view to_string(ParseStatus s);

struct Prediction {
  std::optional<EntityId> anchor;  // set iff status == ok
  std::optional<std::string> explanation;
  std::string raw;
  ParseStatus status = ParseStatus::empty;
  bool fuzzy = false;      // recovered by the whole-word fallback
  bool ambiguous = false;  // the matched name belongs to several entities
  std::optional<MatchRung> rung;
  std::string answer;  // the extracted argument or answer text
};

// Takes the first `<receiver>.add_parent(<arg>)` and resolves <arg> by
// identifier. An unresolved argument counts as an invalid answer. Without any
// add_parent call the longest whole-word term in the text is accepted as a
// fuzzy match, otherwise the completion is unparseable. Never throws.
Prediction parse_code_completion(std::string_view raw, const AnchorIndex& allowed);

// Trims, strips quotes and an echoed "The parent of query node:" prefix, and
// resolves the answer by term. A short name-like answer that does not
// resolve counts as an invalid answer; longer prose falls back to the whole-word
// search, then unparseable. Never throws.
Prediction parse_nl_completion(std::string_view raw, const AnchorIndex& allowed);

Prediction parse_completion(PromptFormat format, std::string_view raw, const AnchorIndex& allowed);

}  // namespace taxo
