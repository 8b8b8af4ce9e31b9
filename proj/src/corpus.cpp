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

#include "fcd/corpus.hpp"

#include <fstream>
#include <iterator>
#include <set>

#include "fcd/dictionary.hpp"
#include "fcd/errors.hpp"

namespace fcd {
namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos
                                            ? std::string_view::npos
                                            : tab - start));
    if (tab == std::string_view::npos) return fields;
    start = tab + 1;
  }
}

std::optional<std::string> optional_field(std::string_view v) {
  if (v.empty() || v == "-") return std::nullopt;
  return std::string(v);
}

bool filename_safe(std::string_view id) {
  return !id.empty() && id != "." && id != ".." &&
         id.find_first_of("/\\\t\r\n") == std::string_view::npos;
}

}  // namespace

const CorpusDocument* CorpusIndex::find(std::string_view doc_id) const {
  for (const auto& d : documents) {
    if (d.doc_id == doc_id) return &d;
  }
  return nullptr;
}

CorpusIndex parse_manifest(std::istream& in,
                           const std::filesystem::path& base_dir,
                           std::string_view source) {
  CorpusIndex corpus;
  std::filesystem::path dict_dir = "dictionaries";
  std::set<std::string, std::less<>> seen;
  bool in_header = true;

  auto fail = [&](std::size_t line_no, const std::string& why) {
    throw ConfigError(std::string(source) + ":" + std::to_string(line_no) +
                      ": " + why);
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;

    if (in_header && line.find('\t') == std::string::npos) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) fail(line_no, "expected key=value or document line");
      const std::string key = line.substr(0, eq);
      const std::string value = line.substr(eq + 1);
      if (key == "rule") {
        const auto rule = parse_rule(value);
        if (!rule) fail(line_no, "unknown rule '" + value + "'");
        corpus.rule = *rule;
      } else if (key == "dictionaries") {
        if (value.empty()) fail(line_no, "empty dictionaries directory");
        dict_dir = value;
      } else {
        fail(line_no, "unknown header key '" + key + "'");
      }
      continue;
    }
    in_header = false;

    const auto fields = split_tabs(line);
    if (fields.size() < 2 || fields.size() > 4) {
      fail(line_no, "expected path<TAB>doc_id<TAB>author<TAB>language");
    }
    CorpusDocument doc;
    if (fields[0].empty()) fail(line_no, "empty path");
    doc.text_path = base_dir / std::filesystem::path(std::string(fields[0]));
    doc.doc_id = std::string(fields[1]);
    if (!filename_safe(doc.doc_id)) {
      fail(line_no, "doc_id '" + doc.doc_id + "' is empty or not filename-safe");
    }
    if (!seen.insert(doc.doc_id).second) {
      fail(line_no, "duplicate doc_id '" + doc.doc_id + "'");
    }
    if (fields.size() > 2) doc.author = optional_field(fields[2]);
    if (fields.size() > 3) doc.language = optional_field(fields[3]);
    corpus.documents.push_back(std::move(doc));
  }

  corpus.dictionary_dir = base_dir / dict_dir;
  for (auto& doc : corpus.documents) {
    doc.dictionary_path =
        corpus.dictionary_dir / (doc.doc_id + std::string(kDictionaryExtension));
  }
  return corpus;
}

CorpusIndex load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest " + path.string());
  return parse_manifest(in, path.parent_path(), path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return data;
}

}  // namespace fcd
