// Copyright 2026 The FCD Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fcd/normalize.hpp"

namespace fcd {

// A dictionary entry is a sequence of one or more tokens. Its canonical form
// joins the tokens with a single space; ordering, equality and persistence
// all work on the canonical form.
std::string join_pattern(std::span<const std::string> words);
std::vector<std::string> split_pattern(std::string_view canonical);

// Sorted, duplicate-free set of word patterns found by a word-level LZW scan
// of one document. Immutable after construction.
//
// Entries are kept in ascending byte order of their canonical UTF-8 form,
// which is the same as lexicographic order over Unicode code points.
class Dictionary {
 public:
  Dictionary() = default;

  // Throws CorruptionError unless `entries` is strictly ascending.
  Dictionary(std::vector<std::string> entries, std::string source_id,
             LanguageRule rule, std::size_t token_count);

  const std::vector<std::string>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  // O(log N) binary search.
  bool contains(std::string_view pattern) const;

  const std::string& source_id() const noexcept { return source_id_; }
  LanguageRule rule() const noexcept { return rule_; }
  std::size_t token_count() const noexcept { return token_count_; }

  friend bool operator==(const Dictionary&, const Dictionary&) = default;

 private:
  std::vector<std::string> entries_;
  std::string source_id_;
  LanguageRule rule_ = LanguageRule::kNone;
  std::size_t token_count_ = 0;
};

// Runs LZW over the token sequence with the dictionary seeded by every
// distinct token. Whenever the current pattern extended by the next token is
// unknown, that extension is registered and the scan restarts from the next
// token. Output codes are not produced; only the dictionary is kept.
Dictionary extract_dictionary(const TokenSequence& seq);

// File format, UTF-8 with LF line endings:
//   FCD1
//   source=<id>\trule=<rule>\ttokens=<count>\tentries=<N>
//   <entry>            (N lines, strictly ascending)
inline constexpr std::string_view kDictionaryMagic = "FCD1";
inline constexpr std::string_view kDictionaryExtension = ".fcd";

void save_dictionary(const Dictionary& d, std::ostream& out,
                     std::string_view destination = "<stream>");
// Writes through a temporary file in the same directory, then renames.
void save_dictionary(const Dictionary& d, const std::filesystem::path& path);

Dictionary load_dictionary(std::istream& in,
                           std::string_view source = "<stream>");
Dictionary load_dictionary(const std::filesystem::path& path);

struct DictionaryHeader {
  std::string source_id;
  LanguageRule rule = LanguageRule::kNone;
  std::size_t token_count = 0;
  std::size_t entry_count = 0;
};

// Reads and validates the two header lines only.
DictionaryHeader read_dictionary_header(const std::filesystem::path& path);

// Texts shorter than this rarely produce dictionaries with enough repeated
// phrases to compare reliably.
inline constexpr std::size_t kMinReliableTokens = 1000;

enum class LengthDiagnostic { kOk, kShortText };

LengthDiagnostic length_diagnostic(const Dictionary& d) noexcept;

}  // namespace fcd
