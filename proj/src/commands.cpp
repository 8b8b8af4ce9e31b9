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

#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "fcd/cli.hpp"
#include "fcd/corpus.hpp"
#include "fcd/dictionary.hpp"
#include "fcd/errors.hpp"

namespace fcd::cli {
namespace {

namespace fs = std::filesystem;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string short_text_warning(std::string_view doc_id, std::size_t tokens) {
  return std::string(doc_id) + ": only " + std::to_string(tokens) +
         " tokens (fewer than " + std::to_string(kMinReliableTokens) +
         "); distances may be unreliable";
}

std::string format_distance(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Primary output goes to `path` when given, else to `fallback`.
void emit(const std::optional<fs::path>& path, std::ostream& fallback,
          const std::string& text) {
  if (!path) {
    fallback << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path->string());
  out << text;
  out.flush();
  if (!out) throw IoError("write failed: " + path->string());
}

bool up_to_date(const CorpusDocument& doc, LanguageRule rule) {
  std::error_code ec;
  if (!fs::exists(doc.dictionary_path, ec)) return false;
  const auto dict_time = fs::last_write_time(doc.dictionary_path, ec);
  if (ec) return false;
  const auto text_time = fs::last_write_time(doc.text_path, ec);
  if (ec || dict_time < text_time) return false;
  try {
    const auto h = read_dictionary_header(doc.dictionary_path);
    return h.source_id == doc.doc_id && h.rule == rule;
  } catch (const Error&) {
    return false;
  }
}

Dictionary dictionary_from_text(const fs::path& path, std::string source_id,
                                LanguageRule rule) {
  const std::string text = read_file(path);
  require_utf8(text, path.string());
  return extract_dictionary(normalize(text, rule, std::move(source_id)));
}

Dictionary load_query(const fs::path& path, LanguageRule rule) {
  if (path.extension() == kDictionaryExtension) return load_dictionary(path);
  return dictionary_from_text(path, path.string(), rule);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos
                                        ? std::string_view::npos
                                        : pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

struct ProblemSpec {
  std::string id;
  std::string language;
  VerificationProblem problem;
};

std::vector<ProblemSpec> read_problems(const fs::path& path,
                                       const CorpusIndex& corpus) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open problems file " + path.string());
  std::vector<ProblemSpec> problems;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, '\t');
    const std::string id = fields.empty() ? "" : std::string(fields[0]);
    auto fail = [&](const std::string& why) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": problem '" + id + "': " + why);
    };
    if (fields.size() != 4) {
      fail("expected problem_id<TAB>language<TAB>unknown<TAB>known,...");
    }
    if (id.empty()) fail("empty problem id");
    if (!ids.insert(id).second) fail("duplicate problem id");

    ProblemSpec spec;
    spec.id = id;
    spec.language = std::string(fields[1]);
    spec.problem.unknown = std::string(fields[2]);
    if (spec.language.empty() || spec.problem.unknown.empty()) {
      fail("empty language or unknown document");
    }
    for (const auto k : split(fields[3], ',')) {
      if (k.empty()) fail("empty known document id");
      spec.problem.known_set.emplace_back(k);
    }
    for (const auto& doc : corpus.documents) {
      if (doc.language == spec.language) {
        spec.problem.language_pool.push_back(doc.doc_id);
      }
    }
    problems.push_back(std::move(spec));
  }
  return problems;
}

std::map<std::string, bool> read_truth(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open truth file " + path.string());
  std::map<std::string, bool> truth;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 2 || (fields[1] != "Y" && fields[1] != "N")) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": expected problem_id<TAB>Y|N");
    }
    truth[std::string(fields[0])] = fields[1] == "Y";
  }
  return truth;
}

}  // namespace

void RunReport::print(std::ostream& out, bool with_timings) const {
  out << command << ": " << documents << " documents";
  if (tokens) out << ", " << tokens << " tokens";
  if (entries) out << ", " << entries << " dictionary entries";
  out << '\n';
  for (const auto& w : warnings) out << "warning: " << w << '\n';
  for (const auto& f : failures) out << "failed: " << f << '\n';
  if (with_timings) {
    double total = 0;
    for (const auto& [phase, seconds] : phases) {
      out << "timing: " << phase << " " << std::fixed << std::setprecision(3)
          << seconds << " s\n";
      total += seconds;
    }
    out << "timing: total " << std::fixed << std::setprecision(3) << total
        << " s\n";
    out.unsetf(std::ios::floatfield);
  }
}

RunReport cmd_build(const BuildOptions& options, std::ostream& log) {
  const CorpusIndex corpus = load_manifest(options.manifest);
  const LanguageRule rule = options.rule.value_or(corpus.rule);
  RunReport report;
  report.command = "build";
  report.documents = corpus.documents.size();

  Stopwatch clock;
  std::error_code ec;
  fs::create_directories(corpus.dictionary_dir, ec);
  if (ec) {
    throw IoError("cannot create dictionary directory " +
                  corpus.dictionary_dir.string());
  }

  struct Outcome {
    bool skipped = false;
    std::size_t tokens = 0;
    std::size_t entries = 0;
    std::string error;
    std::optional<ErrorKind> kind;
  };
  std::vector<Outcome> outcomes(corpus.documents.size());

  parallel_for(corpus.documents.size(), options.threads, [&](std::size_t i) {
    const auto& doc = corpus.documents[i];
    auto& o = outcomes[i];
    try {
      if (!options.force && up_to_date(doc, rule)) {
        const auto h = read_dictionary_header(doc.dictionary_path);
        o.skipped = true;
        o.tokens = h.token_count;
        o.entries = h.entry_count;
        return;
      }
      const Dictionary d = dictionary_from_text(doc.text_path, doc.doc_id, rule);
      save_dictionary(d, doc.dictionary_path);
      o.tokens = d.token_count();
      o.entries = d.size();
    } catch (const Error& e) {
      o.error = e.what();
      o.kind = e.kind();
    }
  });

  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& doc = corpus.documents[i];
    const auto& o = outcomes[i];
    if (o.kind) {
      if (!options.keep_going) {
        throw Error(*o.kind, "document '" + doc.doc_id + "': " + o.error);
      }
      log << "failed " << doc.doc_id << ": " << o.error << '\n';
      report.failures.push_back(doc.doc_id + ": " + o.error);
      continue;
    }
    if (o.skipped) {
      log << "skipped " << doc.doc_id << " (up to date)\n";
    } else {
      log << "built " << doc.doc_id << ": tokens=" << o.tokens
          << " entries=" << o.entries << '\n';
    }
    report.tokens += o.tokens;
    report.entries += o.entries;
    if (o.tokens < kMinReliableTokens) {
      report.warnings.push_back(short_text_warning(doc.doc_id, o.tokens));
    }
  }
  report.phases.emplace_back("extract dictionaries", clock.seconds());
  return report;
}

RunReport cmd_matrix(const MatrixOptions& options, std::ostream& out) {
  const CorpusIndex corpus = load_manifest(options.manifest);
  if (corpus.documents.empty()) throw ConfigError("manifest lists no documents");
  const std::size_t n = corpus.documents.size();
  RunReport report;
  report.command = "matrix";
  report.documents = n;

  std::vector<std::string> labels;
  for (const auto& d : corpus.documents) labels.push_back(d.doc_id);

  DistanceMatrix m;
  if (options.measure == Measure::kFcd) {
    Stopwatch load_clock;
    std::vector<Dictionary> dicts(n);
    parallel_for(n, options.threads, [&](std::size_t i) {
      const auto& doc = corpus.documents[i];
      if (!fs::exists(doc.dictionary_path)) {
        throw IoError("no dictionary for '" + doc.doc_id + "' at " +
                      doc.dictionary_path.string() +
                      "; run `fcd build` on this manifest first");
      }
      dicts[i] = load_dictionary(doc.dictionary_path);
    });
    for (const auto& d : dicts) {
      report.tokens += d.token_count();
      report.entries += d.size();
      if (length_diagnostic(d) == LengthDiagnostic::kShortText) {
        report.warnings.push_back(short_text_warning(d.source_id(), d.token_count()));
      }
    }
    report.phases.emplace_back("load dictionaries", load_clock.seconds());
    Stopwatch matrix_clock;
    m = fcd_matrix(dicts, labels, options.threads);
    report.phases.emplace_back("distance matrix", matrix_clock.seconds());
  } else {
    Stopwatch read_clock;
    std::vector<std::string> texts(n);
    parallel_for(n, options.threads, [&](std::size_t i) {
      const auto& doc = corpus.documents[i];
      texts[i] = read_file(doc.text_path);
      require_utf8(texts[i], doc.text_path.string());
    });
    report.phases.emplace_back("read texts", read_clock.seconds());
    Stopwatch matrix_clock;
    m = ncd_matrix(texts, labels, options.threads);
    report.phases.emplace_back("distance matrix", matrix_clock.seconds());
  }

  std::ostringstream csv;
  write_matrix_csv(m, csv);
  emit(options.output, out, csv.str());
  return report;
}

RunReport cmd_attribute(const AttributeOptions& options, std::ostream& out) {
  const CorpusIndex corpus = load_manifest(options.manifest);
  const LanguageRule rule = options.rule.value_or(corpus.rule);
  if (options.queries.empty()) throw ConfigError("no query documents given");
  RunReport report;
  report.command = "attribute";

  Stopwatch load_clock;
  const auto training = load_training(corpus);
  report.documents = training.size();
  report.phases.emplace_back("load dictionaries", load_clock.seconds());

  Stopwatch query_clock;
  std::ostringstream text;
  if (options.ranking) {
    text << "query\trank\tdoc_id\tauthor\tdistance\n";
  } else {
    text << "query\tpredicted_author\tnearest_doc\tdistance\n";
  }
  for (const auto& path : options.queries) {
    const Dictionary query = load_query(path, rule);
    if (length_diagnostic(query) == LengthDiagnostic::kShortText) {
      report.warnings.push_back(short_text_warning(path.string(), query.token_count()));
    }
    auto result = attribute(query, training, options.threads);
    const std::string id = path.string();
    if (options.ranking) {
      std::size_t rank = 1;
      for (const auto& r : result.ranking) {
        text << id << '\t' << rank++ << '\t' << r.doc_id << '\t' << r.author
             << '\t' << format_distance(r.distance) << '\n';
      }
    } else {
      text << id << '\t' << result.predicted_author << '\t' << result.nearest_doc
           << '\t' << format_distance(result.distance) << '\n';
    }
  }
  report.phases.emplace_back("attribute queries", query_clock.seconds());
  emit(options.output, out, text.str());
  return report;
}

RunReport cmd_verify(const VerifyOptions& options, std::ostream& out) {
  const CorpusIndex corpus = load_manifest(options.manifest);
  const auto problems = read_problems(options.problems, corpus);
  std::optional<std::map<std::string, bool>> truth;
  if (options.truth) truth = read_truth(*options.truth);

  RunReport report;
  report.command = "verify";
  report.documents = corpus.documents.size();

  Stopwatch clock;
  std::ostringstream text;
  text << "problem\tanswer\tknown_mean\tpool_mean\n";
  std::size_t correct = 0;
  for (const auto& spec : problems) {
    VerificationResult r;
    try {
      r = verify(spec.problem, corpus);
    } catch (const ConfigError& e) {
      throw ConfigError("problem '" + spec.id + "': " + e.what());
    }
    const bool same = r.verdict == Verdict::kSameAuthor;
    text << spec.id << '\t' << (same ? 'Y' : 'N') << '\t'
         << format_distance(r.known_mean) << '\t' << format_distance(r.pool_mean)
         << '\n';
    if (truth) {
      const auto it = truth->find(spec.id);
      if (it == truth->end()) {
        throw FormatError("truth file has no answer for problem '" + spec.id + "'");
      }
      if (it->second == same) ++correct;
    }
  }
  if (truth) {
    const double accuracy =
        problems.empty() ? 0.0
                         : static_cast<double>(correct) /
                               static_cast<double>(problems.size());
    text << "accuracy\t" << format_distance(accuracy) << '\t' << correct << '/'
         << problems.size() << '\n';
  }
  report.phases.emplace_back("verify problems", clock.seconds());
  emit(options.output, out, text.str());
  return report;
}

RunReport cmd_cluster(const ClusterOptions& options, std::ostream& out) {
  std::ifstream in(options.matrix, std::ios::binary);
  if (!in) throw IoError("cannot open matrix " + options.matrix.string());
  Stopwatch clock;
  const DistanceMatrix m = read_matrix_csv(in, options.matrix.string());
  const Dendrogram tree = cluster(symmetrize(m));

  RunReport report;
  report.command = "cluster";
  report.documents = m.size();

  constexpr std::string_view kNote =
      "matrix symmetrized as max(d(i,j), d(j,i)); average-linkage (UPGMA) tree";
  std::string text;
  if (options.format == TreeFormat::kNewick) {
    text = "[" + std::string(kNote) + "]\n";
  } else {
    text = "// " + std::string(kNote) + "\n";
  }
  text += export_tree(tree, options.format);
  report.phases.emplace_back("cluster", clock.seconds());
  emit(options.output, out, text);
  return report;
}

}  // namespace fcd::cli
