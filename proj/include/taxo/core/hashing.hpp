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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace taxo {

// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);
// Digest of the concatenation of `parts`, without building it.
std::string sha256_hex(std::span<const std::string_view> parts);

// First 8 bytes of the SHA-256 digest, big-endian. Used to derive seeds.
std::uint64_t sha256_u64(std::string_view data);

}  // namespace taxo
