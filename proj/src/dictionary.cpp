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

#include "fcd/dictionary.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "fcd/errors.hpp"

namespace fcd {
namespace {

bool strictly_ascending(const std::vector<std::string>& v) {
  return std::adjacent_find(v.begin(), v.end(),
                            [](const std::string& a, const std::string& b) {
                              return !(a < b);
                            }) == v.end();
}

std::size_t parse_count(std::string_view text, std::string_view field,
                        std::string_view source) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw FormatError(std::string(source) + ": bad " + std::string(field) +
                      " value '" + std::string(text) + "'");
  }
  return value;
}

std::string_view expect_field(std::string_view& rest, std::string_view key,
                              bool last, std::string_view source) {
  if (rest.substr(0, key.size()) != key) {
    throw FormatError(std::string(source) + ": header field '" +
                      std::string(key) + "' missing or out of order");
  }
  rest.remove_prefix(key.size());
  const auto tab = rest.find('\t');
  if (last != (tab == std::string_view::npos)) {
    throw FormatError(std::string(source) + ": malformed header line");
  }
  std::string_view value = rest.substr(0, tab);
  rest.remove_prefix(last ? rest.size() : tab + 1);
  return value;
}

bool read_line(std::istream& in, std::string& line) {
  return static_cast<bool>(std::getline(in, line));
}

DictionaryHeader parse_header(std::istream& in, std::string_view source) {
  std::string line;
  if (!read_line(in, line)) {
    throw FormatError(std::string(source) + ": empty file, expected '" +
                      std::string(kDictionaryMagic) + "'");
  }
  if (line != kDictionaryMagic) {
    if (line.size() > 3 && line.compare(0, 3, "FCD") == 0) {
      throw FormatError(std::string(source) + ": unsupported version '" +
                        line + "'");
    }
    throw FormatError(std::string(source) + ": bad magic, not a dictionary file");
  }
  if (!read_line(in, line)) {
    throw FormatError(std::string(source) + ": missing header line");
  }
  require_utf8(line, source);

  DictionaryHeader h;
  std::string_view rest = line;
  h.source_id = std::string(expect_field(rest, "source=", false, source));
  const auto rule_text = expect_field(rest, "rule=", false, source);
  const auto rule = parse_rule(rule_text);
  if (!rule) {
    throw FormatError(std::string(source) + ": unknown rule '" +
                      std::string(rule_text) + "'");
  }
  h.rule = *rule;
  h.token_count =
      parse_count(expect_field(rest, "tokens=", false, source), "tokens", source);
  h.entry_count =
      parse_count(expect_field(rest, "entries=", true, source), "entries", source);
  return h;
}

bool valid_pattern(std::string_view canonical) {
  if (canonical.empty()) return false;
  std::size_t start = 0;
  while (true) {
    const auto sp = canonical.find(' ', start);
    const auto word = canonical.substr(start, sp == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : sp - start);
    if (!is_valid_token(word)) return false;
    if (sp == std::string_view::npos) return true;
    start = sp + 1;
  }
}

}  // namespace

std::string join_pattern(std::span<const std::string> words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

std::vector<std::string> split_pattern(std::string_view canonical) {
  std::vector<std::string> words;
  std::size_t start = 0;
  while (start <= canonical.size()) {
    const auto sp = canonical.find(' ', start);
    if (sp == std::string_view::npos) {
      words.emplace_back(canonical.substr(start));
      break;
    }
    words.emplace_back(canonical.substr(start, sp - start));
    start = sp + 1;
  }
  return words;
}

Dictionary::Dictionary(std::vector<std::string> entries, std::string source_id,
                       LanguageRule rule, std::size_t token_count)
    : entries_(std::move(entries)),
      source_id_(std::move(source_id)),
      rule_(rule),
      token_count_(token_count) {
  if (!strictly_ascending(entries_)) {
    throw CorruptionError("dictionary '" + source_id_ +
                          "': entries not strictly ascending");
  }
}

bool Dictionary::contains(std::string_view pattern) const {
  return std::binary_search(entries_.begin(), entries_.end(), pattern,
                            std::less<>());
}

Dictionary extract_dictionary(const TokenSequence& seq) {
  const auto& tokens = seq.tokens;
  if (tokens.empty()) return Dictionary({}, seq.source_id, seq.rule, 0);

  // Codes [0, V) are the distinct tokens in first-seen order; later codes
  // are phrases stored as (prefix code, last token).
  std::unordered_map<std::string_view, std::uint32_t> token_ids;
  std::vector<std::uint32_t> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) {
    const auto next = static_cast<std::uint32_t>(token_ids.size());
    ids.push_back(token_ids.try_emplace(t, next).first->second);
  }
  const auto vocabulary = static_cast<std::uint32_t>(token_ids.size());

  struct Phrase {
    std::uint32_t prefix;
    std::uint32_t last;
  };
  std::vector<Phrase> phrases;
  std::unordered_map<std::uint64_t, std::uint32_t> children;
  children.reserve(tokens.size());

  std::uint32_t current = ids[0];
  for (std::size_t i = 1; i < ids.size(); ++i) {
    const std::uint64_t key = (std::uint64_t{current} << 32) | ids[i];
    const auto [it, inserted] = children.try_emplace(
        key, vocabulary + static_cast<std::uint32_t>(phrases.size()));
    if (inserted) {
      phrases.push_back({current, ids[i]});
      current = ids[i];
    } else {
      current = it->second;
    }
  }
  // The pattern pending at end of input is emitted, never registered.

  std::vector<std::string_view> words(vocabulary);
  for (const auto& [word, id] : token_ids) words[id] = word;

  std::vector<std::string> entries;
  entries.reserve(vocabulary + phrases.size());
  for (const auto w : words) entries.emplace_back(w);
  for (const auto& p : phrases) {
    std::string s = entries[p.prefix];
    s.push_back(' ');
    s += words[p.last];
    entries.push_back(std::move(s));
  }
  std::sort(entries.begin(), entries.end());
  return Dictionary(std::move(entries), seq.source_id, seq.rule,
                    tokens.size());
}

void save_dictionary(const Dictionary& d, std::ostream& out,
                     std::string_view destination) {
  if (d.source_id().find_first_of("\t\r\n") != std::string::npos) {
    throw FormatError("dictionary source id '" + d.source_id() +
                      "' contains a tab or line break");
  }
  out << kDictionaryMagic << '\n'
      << "source=" << d.source_id() << "\trule=" << rule_name(d.rule())
      << "\ttokens=" << d.token_count() << "\tentries=" << d.size() << '\n';
  for (const auto& e : d.entries()) out << e << '\n';
  out.flush();
  if (!out) {
    throw IoError("write failed: " + std::string(destination));
  }
}

void save_dictionary(const Dictionary& d, const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp.string());
    save_dictionary(d, out, tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot write " + path.string());
  }
}

Dictionary load_dictionary(std::istream& in, std::string_view source) {
  const DictionaryHeader h = parse_header(in, source);

  std::vector<std::string> entries;
  entries.reserve(h.entry_count);
  std::string line;
  while (read_line(in, line)) {
    require_utf8(line, source);
    if (!valid_pattern(line)) {
      throw CorruptionError(std::string(source) + ": invalid entry on line " +
                            std::to_string(entries.size() + 3));
    }
    if (!entries.empty() && !(entries.back() < line)) {
      throw CorruptionError(std::string(source) + ": entry on line " +
                            std::to_string(entries.size() + 3) +
                            " is out of order or duplicated");
    }
    entries.push_back(std::move(line));
  }
  if (in.bad()) throw IoError("read failed: " + std::string(source));
  if (entries.size() != h.entry_count) {
    throw CorruptionError(std::string(source) + ": header declares " +
                          std::to_string(h.entry_count) + " entries, found " +
                          std::to_string(entries.size()));
  }
  return Dictionary(std::move(entries), h.source_id, h.rule, h.token_count);
}

Dictionary load_dictionary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return load_dictionary(in, path.string());
}

DictionaryHeader read_dictionary_header(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_header(in, path.string());
}

LengthDiagnostic length_diagnostic(const Dictionary& d) noexcept {
  return d.token_count() < kMinReliableTokens ? LengthDiagnostic::kShortText
                                              : LengthDiagnostic::kOk;
}

}  // namespace fcd
