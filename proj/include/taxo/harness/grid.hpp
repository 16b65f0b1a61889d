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

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "taxo/harness/runner.hpp"

namespace taxo {

// Declaration order is the nesting order of the grid, outermost first.
enum class Axis { shots, format, defs, demos, filter };

Axis parse_axis(std::string_view s);
std::string_view to_string(Axis a);

struct GridRun {
  std::string label;  // e.g. "shots=1_demos=random_filter=on"
  RunConfig config;
  EvalReport report;
};

// Every combination of the chosen toggles over `base`; the "off" value of
// each axis comes first (shots: 1 then 5; format: nl then code; demos:
// random then similarity). Runs share the environment's caches and write
// under base.output_dir/runs/<label>.
std::vector<GridRun> run_ablation_grid(const RunConfig& base, const std::set<Axis>& axes, const Benchmark& benchmark,
                                       RunEnvironment& env);

// The configurations alone, without running them.
std::vector<std::pair<std::string, RunConfig>> grid_configs(const RunConfig& base, const std::set<Axis>& axes);

// Markdown comparison table: Setting (n-shot), one column per varied toggle
// other than shots (Format, Def., Demo., Filter with ✓/×), then Acc and
// Wu&P in percent.
std::string grid_table(const std::vector<GridRun>& runs, const std::set<Axis>& axes);

}  // namespace taxo
