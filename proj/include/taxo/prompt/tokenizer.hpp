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
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace taxo {

class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::string_view tag() const = 0;
  virtual std::size_t count(std::string_view text) const = 0;
};

// Byte-level BPE over a tiktoken-format rank file ("<base64 token> <rank>"
// per line), with the cl100k pre-tokenization pattern. Thread-safe; keeps a
// per-piece count cache.
class BpeTokenizer final : public Tokenizer {
 public:
  static std::unique_ptr<BpeTokenizer> from_file(std::string tag, const std::filesystem::path& ranks);
  ~BpeTokenizer() override;

  std::string_view tag() const override { return tag_; }
  std::size_t count(std::string_view text) const override;
  std::vector<std::string> encode_pieces(std::string_view text) const;

  std::size_t vocabulary_size() const;

 private:
  struct Impl;
  BpeTokenizer(std::string tag, std::unique_ptr<Impl> impl);

  std::string tag_;
  std::unique_ptr<Impl> impl_;
};

// ceil(bytes / 4). Cheap stand-in for usage numbers in mock runs.
class CharsPerTokenTokenizer final : public Tokenizer {
 public:
  std::string_view tag() const override { return "chars4"; }
  std::size_t count(std::string_view text) const override { return (text.size() + 3) / 4; }
};

// Splits text into pre-tokenization pieces following the cl100k pattern.
std::vector<std::string_view> pretokenize(std::string_view text);

inline constexpr std::string_view kDefaultTokenizer = "cl100k_base";

// Registered tags: "cl100k_base" (loaded once from the data directory) and
// "chars4". Throws InvalidConfig for anything else.
const Tokenizer& tokenizer(std::string_view tag);

std::size_t count_tokens(std::string_view text, std::string_view tag = kDefaultTokenizer);

}  // namespace taxo
