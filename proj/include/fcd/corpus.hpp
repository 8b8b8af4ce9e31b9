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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fcd/normalize.hpp"

namespace fcd {

struct CorpusDocument {
  std::string doc_id;
  std::optional<std::string> author;
  std::optional<std::string> language;
  std::filesystem::path text_path;
  std::filesystem::path dictionary_path;
};

// Documents plus the language rule their dictionaries are built with.
struct CorpusIndex {
  std::vector<CorpusDocument> documents;
  LanguageRule rule = LanguageRule::kNone;
  std::filesystem::path dictionary_dir;

  const CorpusDocument* find(std::string_view doc_id) const;
};

// Manifest layout:
//
//   # comment
//   rule=english              optional header block of key=value lines
//   dictionaries=dicts        (dictionary directory, default "dictionaries")
//   texts/a.txt<TAB>a<TAB>hamilton<TAB>en
//   texts/b.txt<TAB>b<TAB>-<TAB>
//
// Document lines carry path, doc_id, author and language; author and
// language may be empty or "-". Relative paths resolve against `base_dir`.
// Each document's dictionary lives at <dictionaries>/<doc_id>.fcd.
//
// Throws ConfigError naming the offending line.
CorpusIndex parse_manifest(std::istream& in,
                           const std::filesystem::path& base_dir,
                           std::string_view source = "<manifest>");

// Throws IoError if the file cannot be read.
CorpusIndex load_manifest(const std::filesystem::path& path);

// Reads a whole file as bytes. Throws IoError naming the path.
std::string read_file(const std::filesystem::path& path);

}  // namespace fcd
