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

#include <filesystem>
#include <string>
#include <string_view>

namespace taxo {

// Root of the shipped data tree (tokenizers/, benchmarks/). Honors the
// TAXO_DATA_DIR environment variable, falling back to the source checkout.
std::filesystem::path data_dir();

// Writes `contents` to `path` through a temporary sibling and a rename, so
// readers never observe a partial file.
void write_file_atomically(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace taxo
