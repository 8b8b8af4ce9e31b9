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

#include "fcd/normalize.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <cstdint>

#include "fcd/errors.hpp"

namespace fcd {
namespace {

bool is_word_char(UChar32 c) { return u_isalpha(c) || u_isdigit(c); }

bool is_italian_vowel(UChar32 c) {
  switch (c) {
    case U'a': case U'e': case U'i': case U'o': case U'u':
    case U'à': case U'è': case U'é': case U'ì': case U'ò': case U'ù':
      return true;
    default:
      return false;
  }
}

void append_utf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  U8_APPEND_UNSAFE(buf, len, c);
  out.append(buf, static_cast<size_t>(len));
}

// Offset of the first code point of the last character and the number of
// code points, assuming valid UTF-8.
struct Tail {
  size_t last_offset = 0;
  size_t length = 0;
  UChar32 last = 0;
};

Tail scan_tail(std::string_view s) {
  Tail t;
  int32_t i = 0;
  const auto n = static_cast<int32_t>(s.size());
  while (i < n) {
    t.last_offset = static_cast<size_t>(i);
    U8_NEXT(s.data(), i, n, t.last);
    ++t.length;
  }
  return t;
}

}  // namespace

std::string_view rule_name(LanguageRule rule) noexcept {
  switch (rule) {
    case LanguageRule::kNone: return "none";
    case LanguageRule::kEnglish: return "english";
    case LanguageRule::kItalian: return "italian";
  }
  return "none";
}

std::optional<LanguageRule> parse_rule(std::string_view name) noexcept {
  if (name == "none") return LanguageRule::kNone;
  if (name == "english") return LanguageRule::kEnglish;
  if (name == "italian") return LanguageRule::kItalian;
  return std::nullopt;
}

std::string apply_rule(std::string_view token, LanguageRule rule) {
  if (rule == LanguageRule::kNone || token.empty()) return std::string(token);
  const Tail tail = scan_tail(token);
  if (tail.length < 3) return std::string(token);
  const bool strip = rule == LanguageRule::kEnglish
                         ? tail.last == U's'
                         : is_italian_vowel(tail.last);
  return std::string(strip ? token.substr(0, tail.last_offset) : token);
}

TokenSequence normalize(std::string_view raw_text, LanguageRule rule,
                        std::string source_id) {
  TokenSequence seq;
  seq.source_id = std::move(source_id);
  seq.rule = rule;

  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    seq.tokens.push_back(apply_rule(current, rule));
    current.clear();
  };

  const char* data = raw_text.data();
  const auto n = static_cast<int32_t>(raw_text.size());
  int32_t i = 0;
  while (i < n) {
    UChar32 c;
    U8_NEXT(data, i, n, c);
    if (c >= 0 && is_word_char(c)) {
      append_utf8(current, u_tolower(c));
    } else {
      flush();
    }
  }
  flush();
  return seq;
}

bool is_valid_token(std::string_view token) noexcept {
  if (token.empty()) return false;
  const auto n = static_cast<int32_t>(token.size());
  int32_t i = 0;
  while (i < n) {
    UChar32 c;
    U8_NEXT(token.data(), i, n, c);
    if (c < 0 || !is_word_char(c)) return false;
  }
  return true;
}

bool is_valid_utf8(std::string_view bytes) noexcept {
  const auto n = static_cast<int32_t>(bytes.size());
  int32_t i = 0;
  while (i < n) {
    UChar32 c;
    U8_NEXT(bytes.data(), i, n, c);
    if (c < 0) return false;
  }
  return true;
}

void require_utf8(std::string_view bytes, std::string_view what) {
  const auto n = static_cast<int32_t>(bytes.size());
  int32_t i = 0;
  while (i < n) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes.data(), i, n, c);
    if (c < 0) {
      throw EncodingError(std::string(what) + ": invalid UTF-8 at byte " +
                          std::to_string(start));
    }
  }
}

}  // namespace fcd
