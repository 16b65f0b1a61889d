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

#include "taxo/harness/grid.hpp"

#include "taxo/core/errors.hpp"
#include "taxo/core/paths.hpp"

namespace taxo {
namespace {

constexpr Axis kOrder[] = {Axis::shots, Axis::format, Axis::defs, Axis::demos, Axis::filter};

std::string value_label(Axis a, const RunConfig& c) {
  switch (a) {
    case Axis::shots: return std::to_string(c.shots);
    case Axis::format: return std::string(to_string(c.format));
    case Axis::defs: return c.defs_enabled ? "on" : "off";
    case Axis::demos: return std::string(to_string(c.demos));
    case Axis::filter: return c.filter_enabled ? "on" : "off";
  }
  return "";
}

void set_value(Axis a, RunConfig& c, int v) {
  switch (a) {
    case Axis::shots: c.shots = v ? 5 : 1; break;
    case Axis::format: c.format = v ? PromptFormat::code : PromptFormat::nl; break;
    case Axis::defs: c.defs_enabled = v != 0; break;
    case Axis::demos: c.demos = v ? DemoSelection::similarity : DemoSelection::random; break;
    case Axis::filter: c.filter_enabled = v != 0; break;
  }
}

const char* mark(bool on) { return on ? "✓" : "×"; }

}  // namespace

Axis parse_axis(std::string_view s) {
  if (s == "shots") return Axis::shots;
  if (s == "format") return Axis::format;
  if (s == "defs") return Axis::defs;
  if (s == "demos") return Axis::demos;
  if (s == "filter") return Axis::filter;
  throw InvalidConfig("unknown grid axis '" + std::string(s) + "'");
}

std::string_view to_string(Axis a) {
  switch (a) {
    case Axis::shots: return "shots";
    case Axis::format: return "format";
    case Axis::defs: return "defs";
    case Axis::demos: return "demos";
    case Axis::filter: return "filter";
  }
  return "";
}

std::vector<std::pair<std::string, RunConfig>> grid_configs(const RunConfig& base, const std::set<Axis>& axes) {
  std::vector<Axis> active;
  for (Axis a : kOrder) {
    if (axes.contains(a)) active.push_back(a);
  }
  std::vector<std::pair<std::string, RunConfig>> out;
  const std::size_t n = std::size_t{1} << active.size();
  for (std::size_t mask = 0; mask < n; ++mask) {
    RunConfig c = base;
    std::string label;
    for (std::size_t i = 0; i < active.size(); ++i) {
      // Outermost axis is the most significant bit.
      const int bit = static_cast<int>((mask >> (active.size() - 1 - i)) & 1);
      set_value(active[i], c, bit);
      if (!label.empty()) label += '_';
      label += std::string(to_string(active[i])) + "=" + value_label(active[i], c);
    }
    if (label.empty()) label = "base";
    if (!base.output_dir.empty()) c.output_dir = base.output_dir / "runs" / label;
    out.emplace_back(std::move(label), std::move(c));
  }
  return out;
}

std::vector<GridRun> run_ablation_grid(const RunConfig& base, const std::set<Axis>& axes, const Benchmark& benchmark,
                                       RunEnvironment& env) {
  std::vector<GridRun> runs;
  for (auto& [label, cfg] : grid_configs(base, axes)) {
    if (env.log) env.log("grid run " + label);
    auto report = run_benchmark(cfg, benchmark, env);
    runs.push_back(GridRun{label, cfg, std::move(report)});
  }
  if (!base.output_dir.empty()) write_file_atomically(base.output_dir / "grid.md", grid_table(runs, axes));
  return runs;
}

std::string grid_table(const std::vector<GridRun>& runs, const std::set<Axis>& axes) {
  std::string out = "| Setting |";
  std::string rule = "|---|";
  const std::pair<Axis, const char*> columns[] = {
      {Axis::format, "Format"}, {Axis::defs, "Def."}, {Axis::demos, "Demo."}, {Axis::filter, "Filter"}};
  for (const auto& [axis, title] : columns) {
    if (!axes.contains(axis)) continue;
    out += std::string(" ") + title + " |";
    rule += ":-:|";
  }
  out += " Acc | Wu&P |\n";
  rule += "--:|--:|\n";
  out += rule;
  for (const auto& run : runs) {
    const auto& c = run.config;
    out += "| " + std::to_string(c.shots) + "-shot |";
    for (const auto& [axis, title] : columns) {
      if (!axes.contains(axis)) continue;
      switch (axis) {
        case Axis::format: out += c.format == PromptFormat::code ? " code |" : " nl |"; break;
        case Axis::defs: out += std::string(" ") + mark(c.defs_enabled) + " |"; break;
        case Axis::demos: out += std::string(" ") + mark(c.demos == DemoSelection::similarity) + " |"; break;
        case Axis::filter: out += std::string(" ") + mark(c.filter_enabled) + " |"; break;
        default: break;
      }
    }
    out += " " + percent(run.report.accuracy) + " | " + percent(run.report.wu_palmer_mean) + " |\n";
  }
  return out;
}

}  // namespace taxo
