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

#include "taxo/prompt/render.hpp"

#include <unordered_set>

#include "taxo/core/errors.hpp"

namespace taxo {
namespace {

constexpr std::string_view kCodeInstructionHead =
    "Complete the next line of code according to the comments and the given code snippet. "
    "You need to find the parent of the query node in the given current taxonomy and use the "
    "add_parent function";
constexpr std::string_view kCodeInstructionRule =
    ". The parent of given query node always exists in the given current taxonomy, so do NOT "
    "generate node that is NOT in the given current taxonomy. ";
constexpr std::string_view kCodeTail =
    "Note that you only need to complete the next ONE line of code, do not generate any "
    "additional content or comments.";
constexpr std::string_view kCodeTailExplain =
    "Note that you only need to complete the next ONE line of code followed by ONE line of "
    "comment, do not generate any additional content.";

constexpr std::string_view kNlInstructionHead =
    "Given the current taxonomy, find the parent of the query node";
constexpr std::string_view kNlInstructionRule =
    ". Please note that the query node may be a new node not in the current taxonomy. The parent "
    "of given query node always exists, so do not generate 'none' or 'not found'. ";
constexpr std::string_view kNlTail =
    "You only need to answer the entity name and do not generate any additional content or "
    "comments.";
constexpr std::string_view kNlTailExplain =
    "You only need to answer the entity name followed by ONE line of comment starting with '#', "
    "do not generate any additional content.";

constexpr std::string_view kExplainClause =
    ", then generating a comment to explain why it is the parent of the given query node";

constexpr std::string_view kContextComment = "# Creating entities and establishing parent-child relationship";
constexpr std::string_view kQueryComment = "# creating query node";
constexpr std::string_view kFindComment = "# Finding the parent of query node";
constexpr std::string_view kNlQuery = "Query node: ";
constexpr std::string_view kNlAnswer = "The parent of query node:";

std::string child_list(const RenderContext& ctx, const Entity& e, bool as_query) {
  std::string out = "[";
  if (!as_query) {
    bool first = true;
    for (const auto& c : e.children) {
      if (!first) out += ", ";
      first = false;
      out += python_repr(ctx.taxonomy->at(c).term);
    }
  }
  out += "]";
  return out;
}

}  // namespace

std::string_view to_string(PromptFormat f) { return f == PromptFormat::code ? "code" : "nl"; }

PromptFormat parse_format(std::string_view s) {
  if (s == "code") return PromptFormat::code;
  if (s == "nl") return PromptFormat::nl;
  throw InvalidConfig("unknown prompt format '" + std::string(s) + "'");
}

std::string python_repr(std::string_view s) {
  const bool has_single = s.find('\'') != std::string_view::npos;
  const bool has_double = s.find('"') != std::string_view::npos;
  const char quote = (has_single && !has_double) ? '"' : '\'';
  std::string out(1, quote);
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (ch == quote) {
          out += '\\';
          out += ch;
        } else if (c < 0x20 || c == 0x7f) {
          static constexpr char kHex[] = "0123456789abcdef";
          out += "\\x";
          out += kHex[c >> 4];
          out += kHex[c & 0xf];
        } else {
          out += ch;
        }
    }
  }
  out += quote;
  return out;
}

std::string render_instruction(PromptFormat format, bool explain) {
  std::string out;
  if (format == PromptFormat::code) {
    out += kCodeInstructionHead;
    if (explain) out += kExplainClause;
    out += kCodeInstructionRule;
    out += explain ? kCodeTailExplain : kCodeTail;
  } else {
    out += kNlInstructionHead;
    if (explain) out += kExplainClause;
    out += kNlInstructionRule;
    out += explain ? kNlTailExplain : kNlTail;
  }
  return out;
}

const std::string& render_class_definition() {
  static const std::string kClass =
      "from typing import List\n"
      "\n"
      "class Entity:\n"
      "    def __init__(self, name: str, description: str, parent: str, child: List['Entity']):\n"
      "        self.name = name\n"
      "        self.description = description\n"
      "        self.parent = parent\n"
      "        self.child = child\n"
      "    def add_parent(self, parent: 'Entity'):\n"
      "        self.parent = parent.name\n"
      "        parent.add_child(self)\n"
      "    def add_child(self, child: 'Entity'):\n"
      "        self.child.append(child)";
  return kClass;
}

std::string render_entity_line(const RenderContext& ctx, const Entity& e, bool as_query) {
  const std::string_view definition = ctx.defs_enabled ? std::string_view(e.definition) : std::string_view();
  std::string out;
  if (ctx.format == PromptFormat::code) {
    out += ctx.identifiers->of(e.id);
    out += " = Entity(name='";
    out += e.term;
    out += "', description='";
    out += definition;
    out += "', parent=";
    out += (as_query || !e.parent) ? std::string("None") : ctx.identifiers->of(*e.parent);
    out += ", child=";
    out += child_list(ctx, e, as_query);
    out += ")";
  } else {
    out += e.term;
    if (!definition.empty()) {
      out += ": ";
      out += definition;
    }
    out += "; parent: ";
    out += (as_query || !e.parent) ? std::string("None") : ctx.taxonomy->at(*e.parent).term;
    out += "; children: ";
    out += child_list(ctx, e, as_query);
    out += ".";
  }
  return out;
}

std::string render_context(const RenderContext& ctx, const std::vector<EntityId>& selected,
                           ContextOrder order) {
  const Taxonomy& t = *ctx.taxonomy;
  for (const auto& id : selected) {
    if (!t.contains(id)) throw UnknownEntity("selected entity '" + id.str() + "' is not in the taxonomy");
  }
  std::vector<EntityId> ordered;
  if (order == ContextOrder::given) {
    ordered = selected;
  } else {
    std::unordered_set<EntityId> wanted(selected.begin(), selected.end());
    for (const auto& id : t.breadth_first()) {
      if (wanted.contains(id)) ordered.push_back(id);
    }
  }

  std::string out;
  if (ctx.format == PromptFormat::code) out += kContextComment;
  for (const auto& id : ordered) {
    if (!out.empty()) out += '\n';
    out += render_entity_line(ctx, t.at(id), false);
  }
  return out;
}

std::string render_demonstrations(const RenderContext& ctx, const std::vector<EntityId>& demo_ids,
                                  std::size_t shots) {
  if (shots > demo_ids.size()) {
    throw InvalidConfig("requested " + std::to_string(shots) + " demonstrations, only " +
                        std::to_string(demo_ids.size()) + " available");
  }
  std::string out;
  for (std::size_t i = 0; i < shots; ++i) {
    const Entity& demo = ctx.taxonomy->at(demo_ids[i]);
    if (!demo.parent) throw InvalidConfig("demonstration '" + demo.id.str() + "' has no parent");
    if (!out.empty()) out += "\n\n";
    out += render_completion_stub(ctx, demo);
    if (ctx.format == PromptFormat::code) {
      out += '\n';
      out += ctx.identifiers->of(demo.id);
      out += ".add_parent(";
      out += ctx.identifiers->of(*demo.parent);
      out += ")";
    } else {
      out += ' ';
      out += ctx.taxonomy->at(*demo.parent).term;
    }
  }
  return out;
}

std::string render_completion_stub(const RenderContext& ctx, const Entity& query) {
  std::string out;
  if (ctx.format == PromptFormat::code) {
    out += kQueryComment;
    out += '\n';
    out += render_entity_line(ctx, query, true);
    out += "\n\n";
    out += kFindComment;
  } else {
    out += kNlQuery;
    out += query.term;
    out += '\n';
    out += kNlAnswer;
  }
  return out;
}

}  // namespace taxo
