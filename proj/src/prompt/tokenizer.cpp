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

#include "taxo/prompt/tokenizer.hpp"

#include <openssl/evp.h>
#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <array>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

#include "taxo/core/errors.hpp"
#include "taxo/core/paths.hpp"

namespace taxo {
namespace {

enum class CharClass : unsigned char { letter, number, space, newline, other };

struct CodePoint {
  std::size_t begin;
  std::size_t end;
  CharClass cls;
  UChar32 cp;
};

CharClass classify(UChar32 c) {
  if (c == '\r' || c == '\n') return CharClass::newline;
  if (c < 0) return CharClass::other;  // malformed UTF-8
  if (u_hasBinaryProperty(c, UCHAR_WHITE_SPACE)) return CharClass::space;
  const auto mask = U_GET_GC_MASK(c);
  if (mask & U_GC_L_MASK) return CharClass::letter;
  if (mask & U_GC_N_MASK) return CharClass::number;
  return CharClass::other;
}

std::vector<CodePoint> decode(std::string_view text) {
  std::vector<CodePoint> out;
  out.reserve(text.size());
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto n = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < n) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, n, c);
    out.push_back(CodePoint{static_cast<std::size_t>(start), static_cast<std::size_t>(i), classify(c), c});
  }
  return out;
}

bool is_ws(CharClass c) { return c == CharClass::space || c == CharClass::newline; }

// Length in code points of the piece starting at i, trying the pattern's
// alternatives in order:
//   '(?i:[sdmt]|ll|ve|re) | [^\r\n\p{L}\p{N}]?+\p{L}++ | \p{N}{1,3}+
//   | ?[^\s\p{L}\p{N}]++[\r\n]*+ | \s++$ | \s*[\r\n] | \s+(?!\S) | \s
std::size_t match_at(const std::vector<CodePoint>& cps, std::size_t i) {
  const std::size_t n = cps.size();
  auto cls = [&](std::size_t j) { return cps[j].cls; };
  auto lower = [&](std::size_t j) -> UChar32 {
    const UChar32 c = cps[j].cp;
    return (c >= 'A' && c <= 'Z') ? c + 32 : c;
  };

  if (cps[i].cp == '\'' && i + 1 < n) {
    const UChar32 a = lower(i + 1);
    if (a == 's' || a == 'd' || a == 'm' || a == 't') return 2;
    if (i + 2 < n) {
      const UChar32 b = lower(i + 2);
      if ((a == 'l' && b == 'l') || (a == 'v' && b == 'e') || (a == 'r' && b == 'e')) return 3;
    }
  }

  {
    std::size_t j = i;
    if (cls(j) != CharClass::letter && cls(j) != CharClass::number && cls(j) != CharClass::newline) ++j;
    if (j < n && cls(j) == CharClass::letter) {
      while (j < n && cls(j) == CharClass::letter) ++j;
      return j - i;
    }
  }

  if (cls(i) == CharClass::number) {
    std::size_t j = i;
    while (j < n && j - i < 3 && cls(j) == CharClass::number) ++j;
    return j - i;
  }

  {
    std::size_t j = i;
    if (cps[j].cp == ' ' && j + 1 < n && cls(j + 1) == CharClass::other) ++j;
    if (cls(j) == CharClass::other) {
      while (j < n && cls(j) == CharClass::other) ++j;
      while (j < n && cls(j) == CharClass::newline) ++j;
      return j - i;
    }
  }

  // Whitespace from here on.
  std::size_t run_end = i;
  while (run_end < n && is_ws(cls(run_end))) ++run_end;
  if (run_end == n) return n - i;
  for (std::size_t p = run_end; p > i; --p) {
    if (cls(p - 1) == CharClass::newline) return p - i;
  }
  if (run_end - i >= 2) return run_end - i - 1;
  return 1;
}

std::string decode_base64(std::string_view in) {
  std::string out(3 * ((in.size() + 3) / 4), '\0');
  const int len = EVP_DecodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                  reinterpret_cast<const unsigned char*>(in.data()),
                                  static_cast<int>(in.size()));
  if (len < 0) throw DataError("bad base64 token in rank file");
  std::size_t size = static_cast<std::size_t>(len);
  // EVP_DecodeBlock counts padding bytes as output.
  if (!in.empty() && in.back() == '=') --size;
  if (in.size() > 1 && in[in.size() - 2] == '=') --size;
  out.resize(size);
  return out;
}

}  // namespace

std::vector<std::string_view> pretokenize(std::string_view text) {
  std::vector<std::string_view> out;
  if (text.empty()) return out;
  const auto cps = decode(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    const std::size_t len = match_at(cps, i);
    const std::size_t b = cps[i].begin;
    const std::size_t e = cps[i + len - 1].end;
    out.push_back(text.substr(b, e - b));
    i += len;
  }
  return out;
}

struct BpeTokenizer::Impl {
  std::unordered_map<std::string, std::uint32_t> ranks;
  mutable std::shared_mutex cache_mu;
  mutable std::unordered_map<std::string, std::uint32_t> cache;

  std::uint32_t rank_of(std::string_view bytes) const {
    auto it = ranks.find(std::string(bytes));
    return it == ranks.end() ? std::numeric_limits<std::uint32_t>::max() : it->second;
  }

  // Boundaries of the merged parts of one piece.
  std::vector<std::size_t> merge(std::string_view piece) const {
    constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::size_t> cuts(piece.size() + 1);
    for (std::size_t i = 0; i <= piece.size(); ++i) cuts[i] = i;
    while (cuts.size() > 2) {
      std::uint32_t best = kNone;
      std::size_t at = 0;
      for (std::size_t k = 0; k + 2 < cuts.size(); ++k) {
        const auto r = rank_of(piece.substr(cuts[k], cuts[k + 2] - cuts[k]));
        if (r < best) {
          best = r;
          at = k;
        }
      }
      if (best == kNone) break;
      cuts.erase(cuts.begin() + static_cast<std::ptrdiff_t>(at) + 1);
    }
    return cuts;
  }

  std::uint32_t count_piece(std::string_view piece) const {
    if (ranks.contains(std::string(piece))) return 1;
    {
      std::shared_lock lock(cache_mu);
      if (auto it = cache.find(std::string(piece)); it != cache.end()) return it->second;
    }
    const auto n = static_cast<std::uint32_t>(merge(piece).size() - 1);
    std::unique_lock lock(cache_mu);
    cache.emplace(piece, n);
    return n;
  }
};

BpeTokenizer::BpeTokenizer(std::string tag, std::unique_ptr<Impl> impl)
    : tag_(std::move(tag)), impl_(std::move(impl)) {}

BpeTokenizer::~BpeTokenizer() = default;

std::unique_ptr<BpeTokenizer> BpeTokenizer::from_file(std::string tag, const std::filesystem::path& path) {
  auto impl = std::make_unique<Impl>();
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto sp = line.find(' ');
    if (sp == std::string::npos) throw DataError(path.string() + ": malformed rank line");
    const auto rank = static_cast<std::uint32_t>(std::stoul(line.substr(sp + 1)));
    impl->ranks.emplace(decode_base64(std::string_view(line).substr(0, sp)), rank);
  }
  // Every single byte must be a token, or counting cannot terminate cleanly.
  for (int b = 0; b < 256; ++b) {
    if (!impl->ranks.contains(std::string(1, static_cast<char>(b)))) {
      throw DataError(path.string() + ": byte " + std::to_string(b) + " has no rank");
    }
  }
  return std::unique_ptr<BpeTokenizer>(new BpeTokenizer(std::move(tag), std::move(impl)));
}

std::size_t BpeTokenizer::count(std::string_view text) const {
  std::size_t total = 0;
  for (auto piece : pretokenize(text)) total += impl_->count_piece(piece);
  return total;
}

std::vector<std::string> BpeTokenizer::encode_pieces(std::string_view text) const {
  std::vector<std::string> out;
  for (auto piece : pretokenize(text)) {
    if (impl_->ranks.contains(std::string(piece))) {
      out.emplace_back(piece);
      continue;
    }
    const auto cuts = impl_->merge(piece);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      out.emplace_back(piece.substr(cuts[k], cuts[k + 1] - cuts[k]));
    }
  }
  return out;
}

std::size_t BpeTokenizer::vocabulary_size() const { return impl_->ranks.size(); }

const Tokenizer& tokenizer(std::string_view tag) {
  if (tag == "chars4") {
    static const CharsPerTokenTokenizer chars4;
    return chars4;
  }
  if (tag == kDefaultTokenizer) {
    static const std::unique_ptr<BpeTokenizer> cl100k = BpeTokenizer::from_file(
        std::string(kDefaultTokenizer), data_dir() / "tokenizers" / "cl100k_base.tiktoken");
    return *cl100k;
  }
  throw InvalidConfig("unknown tokenizer '" + std::string(tag) + "'");
}

std::size_t count_tokens(std::string_view text, std::string_view tag) {
  return tokenizer(tag).count(text);
}

}  // namespace taxo
