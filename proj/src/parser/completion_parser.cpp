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

#include "taxo/parser/completion_parser.hpp"

#include <algorithm>
#include <vector>

namespace taxo {
namespace {

constexpr std::string_view kCall = ".add_parent(";
constexpr std::string_view kEcho = "the parent of query node:";
constexpr std::string_view kSpace = " \t\r\n\f\v";

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(kSpace);
  return s.substr(b, e - b + 1);
}

std::string_view strip_quotes(std::string_view s) {
  s = trim(s);
  while (s.size() >= 2) {
    const char a = s.front();
    const char b = s.back();
    if ((a == '\'' || a == '"' || a == '`') && a == b) {
      s = trim(s.substr(1, s.size() - 2));
    } else {
      break;
    }
  }
  return s;
}

bool starts_with_folded(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char c = s[i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
    if (c != prefix[i]) return false;
  }
  return true;
}

std::vector<std::string_view> lines_of(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto end = s.find('\n', start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

// Text of a '#' comment starting at `pos`.
std::string comment_text(std::string_view line, std::size_t pos) {
  return std::string(trim(line.substr(pos + 1)));
}

// The first '#' comment on the given line after `from`, else on the next
// non-blank line (which must start with '#').
std::optional<std::string> find_explanation(const std::vector<std::string_view>& lines, std::size_t line_no,
                                            std::size_t from) {
  if (auto h = lines[line_no].find('#', from); h != std::string_view::npos) {
    auto text = comment_text(lines[line_no], h);
    if (!text.empty()) return text;
  }
  for (std::size_t i = line_no + 1; i < lines.size(); ++i) {
    auto t = trim(lines[i]);
    if (t.empty() || t.starts_with("```")) continue;
    if (t.front() == '#') {
      auto text = comment_text(t, 0);
      if (!text.empty()) return text;
    }
    break;
  }
  return std::nullopt;
}

void accept(Prediction& p, const AnchorMatch& m) {
  p.status = ParseStatus::ok;
  p.anchor = m.id;
  p.rung = m.rung;
  p.ambiguous = m.ambiguous;
}

bool fuzzy_fallback(Prediction& p, const AnchorIndex& allowed) {
  if (auto id = allowed.longest_term_in(p.raw)) {
    p.status = ParseStatus::ok;
    p.anchor = *id;
    p.fuzzy = true;
    return true;
  }
  return false;
}

// Short, single-line and free of sentence punctuation.
bool looks_like_name(std::string_view s) {
  if (s.empty() || s.find('\n') != std::string_view::npos) return false;
  if (s.find_first_of(".!?;:,") != std::string_view::npos) return false;
  std::size_t words = 0;
  bool in_word = false;
  for (char c : s) {
    const bool space = c == ' ' || c == '\t';
    if (!space && !in_word) ++words;
    in_word = !space;
  }
  return words <= 6;
}

}  // namespace

std::string_view to_string(ParseStatus s) {
  switch (s) {
    case ParseStatus::ok: return "ok";
    case ParseStatus::not_in_taxonomy: return "not_in_taxonomy";
    case ParseStatus::unparseable: return "unparseable";
    case ParseStatus::empty: return "empty";
  }
  return "unparseable";
}

Prediction parse_code_completion(std::string_view raw, const AnchorIndex& allowed) {
  Prediction p;
  p.raw = std::string(raw);
  if (trim(raw).empty()) {
    p.status = ParseStatus::empty;
    return p;
  }
  const auto lines = lines_of(raw);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto line = lines[li];
    const auto call = line.find(kCall);
    if (call == std::string_view::npos) continue;
    const auto arg_start = call + kCall.size();
    const auto close = line.find(')', arg_start);
    const auto arg_end = close == std::string_view::npos ? line.size() : close;
    const auto arg = strip_quotes(line.substr(arg_start, arg_end - arg_start));
    p.answer = std::string(arg);
    p.explanation = find_explanation(lines, li, close == std::string_view::npos ? line.size() : close);
    if (arg.empty()) {
      p.status = ParseStatus::unparseable;
      return p;
    }
    if (auto m = allowed.by_identifier(arg)) {
      accept(p, *m);
    } else {
      p.status = ParseStatus::not_in_taxonomy;
    }
    return p;
  }
  if (!fuzzy_fallback(p, allowed)) p.status = ParseStatus::unparseable;
  return p;
}

Prediction parse_nl_completion(std::string_view raw, const AnchorIndex& allowed) {
  Prediction p;
  p.raw = std::string(raw);
  std::string_view text = trim(raw);
  if (text.empty()) {
    p.status = ParseStatus::empty;
    return p;
  }
  if (starts_with_folded(text, kEcho)) text = trim(text.substr(kEcho.size()));

  // The answer is the first non-blank line; a '#' comment on it or the next
  // line is the explanation.
  const auto lines = lines_of(text);
  std::size_t li = 0;
  while (li < lines.size() && trim(lines[li]).empty()) ++li;
  if (li == lines.size()) {
    p.status = ParseStatus::empty;
    return p;
  }
  std::string_view answer = lines[li];
  if (auto h = answer.find('#'); h != std::string_view::npos) {
    p.explanation = find_explanation(lines, li, h);
    answer = answer.substr(0, h);
  } else {
    p.explanation = find_explanation(lines, li, answer.size());
  }
  answer = strip_quotes(answer);
  while (!answer.empty() && answer.back() == '.') answer = strip_quotes(answer.substr(0, answer.size() - 1));
  p.answer = std::string(answer);

  if (!answer.empty()) {
    if (auto m = allowed.by_term(answer)) {
      accept(p, *m);
      return p;
    }
  }
  const bool single_line = lines.size() - li == 1 || p.explanation.has_value();
  if (single_line && looks_like_name(answer)) {
    p.status = ParseStatus::not_in_taxonomy;
    return p;
  }
  if (!fuzzy_fallback(p, allowed)) p.status = ParseStatus::unparseable;
  return p;
}

Prediction parse_completion(PromptFormat format, std::string_view raw, const AnchorIndex& allowed) {
  return format == PromptFormat::code ? parse_code_completion(raw, allowed) : parse_nl_completion(raw, allowed);
}

}  // namespace taxo
