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

#include <CLI11.hpp>

#include <iostream>
#include <thread>

#include "fcd/cli.hpp"
#include "fcd/errors.hpp"

namespace fcd::cli {
namespace {

unsigned default_threads() {
  return std::max(1u, std::thread::hardware_concurrency());
}

LanguageRule to_rule(const std::string& name) {
  // CLI11 already restricted the value set.
  return *parse_rule(name);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fast Compression Distance: dictionary-based text similarity, "
               "attribution, verification and clustering",
               "fcd"};
  app.require_subcommand(1);

  const std::vector<std::string> rules{"none", "english", "italian"};
  std::string rule_name;
  std::string measure_name = "fcd";
  std::string format_name = "newick";
  unsigned threads = default_threads();
  bool force = false, keep_going = false, timing = false, ranking = false;
  std::string output, manifest, problems, truth, matrix;
  std::vector<std::string> queries;

  auto add_threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", threads, "Worker threads")
        ->check(CLI::Range(1u, 1024u));
  };
  auto add_rule = [&](CLI::App* cmd) {
    cmd->add_option("--rule", rule_name, "Suffix rule (overrides the manifest)")
        ->check(CLI::IsMember(rules));
  };

  auto* build = app.add_subcommand("build", "Extract and store one dictionary per document");
  build->add_option("manifest", manifest, "Corpus manifest")->required();
  add_rule(build);
  add_threads(build);
  build->add_flag("--force", force, "Rebuild dictionaries that are up to date");
  build->add_flag("--keep-going", keep_going, "Continue past unreadable documents");
  build->add_flag("--timing", timing, "Report phase timings");

  auto* mat = app.add_subcommand("matrix", "Write the full pairwise distance matrix as CSV");
  mat->add_option("manifest", manifest, "Corpus manifest")->required();
  mat->add_option("--measure", measure_name, "Distance measure")
      ->check(CLI::IsMember({"fcd", "ncd"}));
  mat->add_option("--output", output, "CSV path (default: stdout)");
  add_threads(mat);
  mat->add_flag("--timing", timing, "Report phase timings");

  auto* attr = app.add_subcommand("attribute", "Assign queries to the nearest training author");
  attr->add_option("manifest", manifest, "Training manifest")->required();
  attr->add_option("queries", queries, "Query texts or .fcd dictionaries")->required();
  add_rule(attr);
  attr->add_flag("--ranking", ranking, "Print the full ranking per query");
  attr->add_option("--output", output, "Output path (default: stdout)");
  add_threads(attr);
  attr->add_flag("--timing", timing, "Report phase timings");

  auto* ver = app.add_subcommand("verify", "Decide same-author verification problems");
  ver->add_option("manifest", manifest, "Corpus manifest")->required();
  ver->add_option("problems", problems, "Problems file")->required();
  ver->add_option("--truth", truth, "Ground-truth file; prints accuracy");
  ver->add_option("--output", output, "Output path (default: stdout)");
  ver->add_flag("--timing", timing, "Report phase timings");

  auto* clu = app.add_subcommand("cluster", "Build a dendrogram from a distance matrix CSV");
  clu->add_option("matrix", matrix, "Distance matrix CSV")->required();
  clu->add_option("--format", format_name, "Tree format")
      ->check(CLI::IsMember({"newick", "dot"}));
  clu->add_option("--output", output, "Output path (default: stdout)");
  clu->add_flag("--timing", timing, "Report phase timings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const auto out_path = [&]() -> std::optional<std::filesystem::path> {
    if (output.empty()) return std::nullopt;
    return std::filesystem::path(output);
  };
  const auto rule = [&]() -> std::optional<LanguageRule> {
    if (rule_name.empty()) return std::nullopt;
    return to_rule(rule_name);
  };

  try {
    RunReport report;
    if (build->parsed()) {
      report = cmd_build({manifest, rule(), force, keep_going, threads}, err);
    } else if (mat->parsed()) {
      report = cmd_matrix({manifest, *parse_measure(measure_name), out_path(), threads}, out);
    } else if (attr->parsed()) {
      std::vector<std::filesystem::path> paths(queries.begin(), queries.end());
      report = cmd_attribute({manifest, paths, rule(), ranking, out_path(), threads}, out);
    } else if (ver->parsed()) {
      std::optional<std::filesystem::path> truth_path;
      if (!truth.empty()) truth_path = truth;
      report = cmd_verify({manifest, problems, truth_path, out_path()}, out);
    } else {
      report = cmd_cluster({matrix, *parse_tree_format(format_name), out_path()}, out);
    }
    report.print(err, timing);
    return report.failures.empty() ? 0 : exit_code_for(ErrorKind::kIo);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(ErrorKind::kIo);
  }
}

}  // namespace fcd::cli
