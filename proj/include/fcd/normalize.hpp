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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fcd {

// Language-specific suffix rule applied to every token after case folding.
//   english: drop one trailing 's' (tokens of 3+ characters)
//   italian: drop a trailing vowel, accented or not (tokens of 3+ characters)
enum class LanguageRule { kNone, kEnglish, kItalian };

std::string_view rule_name(LanguageRule rule) noexcept;
std::optional<LanguageRule> parse_rule(std::string_view name) noexcept;

// Ordered word tokens of one document. Duplicates are kept.
struct TokenSequence {
  std::vector<std::string> tokens;
  std::string source_id;
  LanguageRule rule = LanguageRule::kNone;
};

// Splits text into maximal runs of Unicode letters and decimal digits,
// lowercases them and applies `rule`. Every other code point, including
// bytes that do not decode as UTF-8, separates tokens.
TokenSequence normalize(std::string_view raw_text, LanguageRule rule,
                        std::string source_id = {});

// `token` must be non-empty and already lowercased. Never returns "".
std::string apply_rule(std::string_view token, LanguageRule rule);

// True iff `token` is non-empty valid UTF-8 made only of letters and digits.
bool is_valid_token(std::string_view token) noexcept;

bool is_valid_utf8(std::string_view bytes) noexcept;

// Throws EncodingError naming `what` and the byte offset of the first
// ill-formed sequence.
void require_utf8(std::string_view bytes, std::string_view what);

}  // namespace fcd
