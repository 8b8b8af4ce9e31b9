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
#include <utility>
#include <vector>

#include "fcd/analysis.hpp"
#include "fcd/normalize.hpp"

namespace fcd::cli {

// Summary of one command run. Timings are excluded from determinism checks;
// everything else is reproducible.
struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, double>> phases;  // seconds
  std::size_t documents = 0;
  std::size_t tokens = 0;
  std::size_t entries = 0;
  std::vector<std::string> warnings;
  std::vector<std::string> failures;

  void print(std::ostream& out, bool with_timings) const;
};

struct BuildOptions {
  std::filesystem::path manifest;
  std::optional<LanguageRule> rule;  // overrides the manifest default
  bool force = false;
  bool keep_going = false;
  unsigned threads = 1;
};

// Writes one dictionary per document. A document is skipped when its
// dictionary is newer than the text and records the same id and rule.
RunReport cmd_build(const BuildOptions& options, std::ostream& log);

struct MatrixOptions {
  std::filesystem::path manifest;
  Measure measure = Measure::kFcd;
  std::optional<std::filesystem::path> output;  // CSV goes to `out` if unset
  unsigned threads = 1;
};

RunReport cmd_matrix(const MatrixOptions& options, std::ostream& out);

struct AttributeOptions {
  std::filesystem::path manifest;
  std::vector<std::filesystem::path> queries;  // raw texts or .fcd files
  std::optional<LanguageRule> rule;
  bool ranking = false;
  std::optional<std::filesystem::path> output;
  unsigned threads = 1;
};

RunReport cmd_attribute(const AttributeOptions& options, std::ostream& out);

// Problems file: problem_id<TAB>language<TAB>unknown_doc<TAB>known1,known2,...
// Truth file:    problem_id<TAB>Y|N
struct VerifyOptions {
  std::filesystem::path manifest;
  std::filesystem::path problems;
  std::optional<std::filesystem::path> truth;
  std::optional<std::filesystem::path> output;
};

RunReport cmd_verify(const VerifyOptions& options, std::ostream& out);

struct ClusterOptions {
  std::filesystem::path matrix;
  TreeFormat format = TreeFormat::kNewick;
  std::optional<std::filesystem::path> output;
};

RunReport cmd_cluster(const ClusterOptions& options, std::ostream& out);

// Entry point of the `fcd` tool. Exit codes: 0 success, 1 usage or
// configuration error, 2 I/O error, 3 data-format error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fcd::cli
