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

#include "taxo/prompt/bundle.hpp"

#include "taxo/core/errors.hpp"

namespace taxo {
namespace {

constexpr std::string_view kSep = "\n\n";
constexpr std::string_view kContextHead = "# Creating entities and establishing parent-child relationship";
constexpr std::string_view kQueryHead = "# creating query node";
constexpr std::string_view kNlQueryHead = "Query node: ";

bool starts_with_at(std::string_view text, std::size_t pos, std::string_view prefix) {
  return text.substr(pos, prefix.size()) == prefix;
}

}  // namespace

PromptBundle assemble(PromptFormat format, std::string instruction, std::string class_definition,
                      std::string context, std::string demonstrations, std::string stub,
                      std::size_t shots, PromptMetadata metadata) {
  if (format == PromptFormat::nl && !class_definition.empty()) {
    throw InvalidConfig("natural-language prompts carry no class definition");
  }
  if (format == PromptFormat::code && class_definition.empty()) {
    throw InvalidConfig("code prompts need the class definition");
  }
  PromptBundle b;
  b.format = format;
  b.shots = shots;
  b.system_instruction = std::move(instruction);
  b.class_definition = std::move(class_definition);
  b.context_block = std::move(context);
  b.demonstration_block = std::move(demonstrations);
  b.completion_stub = std::move(stub);
  b.metadata = std::move(metadata);
  for (const std::string* part : {&b.system_instruction, &b.class_definition, &b.context_block,
                                  &b.demonstration_block, &b.completion_stub}) {
    if (part->empty()) continue;
    if (!b.rendered.empty()) b.rendered += kSep;
    b.rendered += *part;
  }
  return b;
}

std::optional<PromptBundle> parse_bundle(std::string_view text, PromptFormat format) {
  // The instruction is a single paragraph.
  const auto instr_end = text.find(kSep);
  if (instr_end == std::string_view::npos) return std::nullopt;
  std::string instruction(text.substr(0, instr_end));
  std::size_t pos = instr_end + kSep.size();

  std::string class_def;
  std::string context;
  std::vector<std::string> blocks;  // demonstration blocks, then the stub

  if (format == PromptFormat::code) {
    const auto ctx_pos = text.find(std::string("\n\n").append(kContextHead), pos);
    if (ctx_pos == std::string_view::npos) return std::nullopt;
    class_def = std::string(text.substr(pos, ctx_pos - pos));
    pos = ctx_pos + kSep.size();
    const auto q_pos = text.find(std::string("\n\n").append(kQueryHead), pos);
    if (q_pos == std::string_view::npos) return std::nullopt;
    context = std::string(text.substr(pos, q_pos - pos));
    pos = q_pos + kSep.size();
    // Every demo and the stub start with the query comment.
    while (true) {
      const auto next = text.find(std::string("\n\n").append(kQueryHead), pos);
      if (next == std::string_view::npos) {
        blocks.emplace_back(text.substr(pos));
        break;
      }
      blocks.emplace_back(text.substr(pos, next - pos));
      pos = next + kSep.size();
    }
  } else {
    // Context lines up to the first "Query node:" paragraph (possibly none).
    if (!starts_with_at(text, pos, kNlQueryHead)) {
      const auto q_pos = text.find(std::string("\n\n").append(kNlQueryHead), pos);
      if (q_pos == std::string_view::npos) return std::nullopt;
      context = std::string(text.substr(pos, q_pos - pos));
      pos = q_pos + kSep.size();
    }
    while (true) {
      const auto next = text.find(kSep, pos);
      if (next == std::string_view::npos) {
        blocks.emplace_back(text.substr(pos));
        break;
      }
      blocks.emplace_back(text.substr(pos, next - pos));
      pos = next + kSep.size();
    }
  }
  // A code demo block is "<query comment>\n<line>\n\n<find comment>\n<answer>";
  // the split above cut it at the inner blank line, so rejoin pairs.
  if (format == PromptFormat::code) {
    std::vector<std::string> joined;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (starts_with_at(blocks[i], 0, kQueryHead)) {
        joined.push_back(blocks[i]);
      } else if (!joined.empty()) {
        joined.back() += "\n\n" + blocks[i];
      } else {
        return std::nullopt;
      }
    }
    blocks = std::move(joined);
  }
  if (blocks.empty()) return std::nullopt;
  std::string stub = std::move(blocks.back());
  blocks.pop_back();
  std::string demos;
  for (const auto& b : blocks) {
    if (!demos.empty()) demos += kSep;
    demos += b;
  }
  try {
    auto bundle = assemble(format, std::move(instruction), std::move(class_def), std::move(context),
                           std::move(demos), std::move(stub), blocks.size());
    if (bundle.rendered != text) return std::nullopt;
    return bundle;
  } catch (const InvalidConfig&) {
    return std::nullopt;
  }
}

PromptBundle build_prompt(const Taxonomy& t, const IdentifierTable& identifiers, const Entity& query,
                          const std::vector<EntityId>& selected, const std::vector<EntityId>& demo_ids,
                          const PromptOptions& options, std::optional<std::size_t> filter_k) {
  RenderContext ctx{&t, &identifiers, options.format, options.defs_enabled};
  PromptMetadata meta;
  meta.filter_k = filter_k;
  meta.selected_ids = selected;
  meta.demo_ids.assign(demo_ids.begin(),
                       demo_ids.begin() + static_cast<std::ptrdiff_t>(std::min(options.shots, demo_ids.size())));
  meta.defs_enabled = options.defs_enabled;
  meta.explain_enabled = options.explain_enabled;
  return assemble(options.format, render_instruction(options.format, options.explain_enabled),
                  options.format == PromptFormat::code ? render_class_definition() : std::string(),
                  render_context(ctx, selected, options.order),
                  render_demonstrations(ctx, demo_ids, options.shots),
                  render_completion_stub(ctx, query), options.shots, std::move(meta));
}

}  // namespace taxo
