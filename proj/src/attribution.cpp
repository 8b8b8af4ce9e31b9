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

#include <algorithm>
#include <set>

#include "fcd/analysis.hpp"
#include "fcd/errors.hpp"
#include "fcd/similarity.hpp"

namespace fcd {

AttributionResult attribute(const Dictionary& query,
                            std::span<const TrainingDocument> training,
                            unsigned threads) {
  if (training.empty()) throw ConfigError("attribution needs training documents");
  for (const auto& t : training) {
    if (!t.author) {
      throw ConfigError("training document '" + t.doc_id + "' has no author label");
    }
  }
  if (query.empty()) {
    throw UndefinedDistanceError("query '" + query.source_id() +
                                 "' has an empty dictionary");
  }

  AttributionResult result;
  result.query_id = query.source_id();
  result.ranking.resize(training.size());
  parallel_for(training.size(), threads, [&](std::size_t i) {
    result.ranking[i] = {training[i].doc_id, *training[i].author,
                         fcd(query, training[i].dictionary)};
  });
  std::sort(result.ranking.begin(), result.ranking.end(),
            [](const RankedDocument& a, const RankedDocument& b) {
              if (a.distance != b.distance) return a.distance < b.distance;
              return a.doc_id < b.doc_id;
            });
  const auto& best = result.ranking.front();
  result.predicted_author = best.author;
  result.nearest_doc = best.doc_id;
  result.distance = best.distance;
  return result;
}

std::vector<TrainingDocument> load_training(const CorpusIndex& corpus) {
  std::vector<TrainingDocument> training;
  training.reserve(corpus.documents.size());
  for (const auto& doc : corpus.documents) {
    if (!doc.author) {
      throw ConfigError("training document '" + doc.doc_id +
                        "' has no author label");
    }
    if (!std::filesystem::exists(doc.dictionary_path)) {
      throw IoError("document '" + doc.doc_id + "': dictionary " +
                    doc.dictionary_path.string() + " not found (run build first)");
    }
    training.push_back({doc.doc_id, doc.author, load_dictionary(doc.dictionary_path)});
  }
  return training;
}

AttributionResult attribute(const Dictionary& query, const CorpusIndex& training,
                            unsigned threads) {
  const auto docs = load_training(training);
  return attribute(query, docs, threads);
}

namespace {

const Dictionary& lookup(const DictionaryMap& dictionaries, std::string_view id) {
  const auto it = dictionaries.find(id);
  if (it == dictionaries.end()) {
    throw ConfigError("no dictionary for document '" + std::string(id) + "'");
  }
  return it->second;
}

}  // namespace

VerificationResult verify(const VerificationProblem& problem,
                          const DictionaryMap& dictionaries) {
  if (problem.known_set.empty()) throw ConfigError("verification: empty known set");
  const std::set<std::string_view> pool(problem.language_pool.begin(),
                                        problem.language_pool.end());
  for (const auto& k : problem.known_set) {
    if (k == problem.unknown) {
      throw ConfigError("verification: unknown document '" + k +
                        "' is also in the known set");
    }
    if (!pool.contains(k)) {
      throw ConfigError("verification: known document '" + k +
                        "' is not in the language pool");
    }
  }

  const Dictionary& unknown = lookup(dictionaries, problem.unknown);
  auto mean_distance = [&](const auto& ids) {
    double sum = 0;
    std::size_t count = 0;
    for (std::string_view id : ids) {
      if (id == problem.unknown) continue;
      sum += fcd(unknown, lookup(dictionaries, id));
      ++count;
    }
    return sum / static_cast<double>(count);
  };

  // Means over sorted ids so the floating-point sums do not depend on the
  // order the caller listed documents in.
  const std::set<std::string_view> known(problem.known_set.begin(),
                                         problem.known_set.end());
  VerificationResult r;
  r.known_mean = mean_distance(known);
  r.pool_mean = mean_distance(pool);
  r.verdict = r.known_mean < r.pool_mean ? Verdict::kSameAuthor
                                         : Verdict::kDifferentAuthor;
  return r;
}

VerificationResult verify(const VerificationProblem& problem,
                          const CorpusIndex& corpus) {
  DictionaryMap dictionaries;
  auto load = [&](const std::string& id) {
    if (dictionaries.contains(id)) return;
    const auto* doc = corpus.find(id);
    if (!doc) throw ConfigError("verification: unknown doc_id '" + id + "'");
    if (!std::filesystem::exists(doc->dictionary_path)) {
      throw IoError("document '" + id + "': dictionary " +
                    doc->dictionary_path.string() + " not found (run build first)");
    }
    dictionaries.emplace(id, load_dictionary(doc->dictionary_path));
  };
  load(problem.unknown);
  for (const auto& id : problem.known_set) load(id);
  for (const auto& id : problem.language_pool) load(id);
  return verify(problem, dictionaries);
}

}  // namespace fcd
