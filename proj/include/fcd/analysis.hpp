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
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fcd/corpus.hpp"
#include "fcd/dictionary.hpp"

namespace fcd {

enum class Measure { kFcd, kNcd };

std::string_view measure_name(Measure m) noexcept;
std::optional<Measure> parse_measure(std::string_view name) noexcept;

// Calls fn(i) for every i in [0, n) on up to `threads` workers. The first
// exception thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

// Labeled square matrix, row-major. values(i, j) = d(doc_i, doc_j); FCD
// matrices are generally asymmetric.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  double operator()(std::size_t i, std::size_t j) const {
    return values_[i * size() + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return values_[i * size() + j];
  }

  bool is_symmetric() const noexcept;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> values_;
};

// Throws UndefinedDistanceError naming the first document whose dictionary
// is empty.
DistanceMatrix fcd_matrix(std::span<const Dictionary> dictionaries,
                          std::vector<std::string> labels, unsigned threads = 1);

// Each entry is ncd(text_i, text_j); the diagonal is computed too.
DistanceMatrix ncd_matrix(std::span<const std::string> texts,
                          std::vector<std::string> labels, unsigned threads = 1);

// fcd: loads every document's dictionary. ncd: reads and UTF-8 validates the
// raw texts. I/O errors name the document.
DistanceMatrix build_matrix(const CorpusIndex& corpus, Measure measure,
                            unsigned threads = 1);

// out(i, j) = max(m(i, j), m(j, i)). The diagonal is kept as is.
DistanceMatrix symmetrize(const DistanceMatrix& m);

// `id,<label1>,...` then `<label_i>,<v(i,1)>,...` with six decimals and LF
// endings. Labels are quoted RFC 4180 style when needed.
void write_matrix_csv(const DistanceMatrix& m, std::ostream& out);
DistanceMatrix read_matrix_csv(std::istream& in,
                               std::string_view source = "<csv>");

struct TrainingDocument {
  std::string doc_id;
  std::optional<std::string> author;
  Dictionary dictionary;
};

struct RankedDocument {
  std::string doc_id;
  std::string author;
  double distance = 0;
};

struct AttributionResult {
  std::string query_id;
  std::string predicted_author;
  std::string nearest_doc;
  double distance = 0;
  std::vector<RankedDocument> ranking;  // ascending distance, then doc_id
};

// Nearest neighbour by fcd(query, training_doc); ties go to the smallest
// doc_id.
AttributionResult attribute(const Dictionary& query,
                            std::span<const TrainingDocument> training,
                            unsigned threads = 1);

std::vector<TrainingDocument> load_training(const CorpusIndex& corpus);

AttributionResult attribute(const Dictionary& query, const CorpusIndex& training,
                            unsigned threads = 1);

struct VerificationProblem {
  std::vector<std::string> known_set;
  std::string unknown;
  std::vector<std::string> language_pool;
};

enum class Verdict { kSameAuthor, kDifferentAuthor };

struct VerificationResult {
  Verdict verdict = Verdict::kDifferentAuthor;
  double known_mean = 0;
  double pool_mean = 0;
};

using DictionaryMap = std::map<std::string, Dictionary, std::less<>>;

// Same author iff the mean fcd(unknown, k) over the known set is strictly
// below the mean fcd(unknown, d) over the language pool. Known documents
// count toward the pool mean; the unknown document itself does not.
VerificationResult verify(const VerificationProblem& problem,
                          const DictionaryMap& dictionaries);

VerificationResult verify(const VerificationProblem& problem,
                          const CorpusIndex& corpus);

// Binary merge tree. Nodes [0, n) are leaves in label order; every later node
// is a merge of two earlier ones, in merge order. The root is the last node.
struct Dendrogram {
  struct Node {
    int left = -1;
    int right = -1;
    double height = 0;
    std::size_t leaves = 1;
  };

  std::vector<std::string> labels;
  std::vector<Node> nodes;

  std::size_t leaf_count() const noexcept { return labels.size(); }
  bool is_leaf(std::size_t node) const noexcept { return node < labels.size(); }
  std::size_t root() const noexcept { return nodes.size() - 1; }
};

// Average-linkage (UPGMA) agglomerative clustering. The closest pair of
// clusters merges first; ties go to the pair with the lowest indices, where a
// cluster's index is that of its first leaf. The diagonal is ignored.
// Throws PreconditionError if `m` is empty or not exactly symmetric.
Dendrogram cluster(const DistanceMatrix& m);

enum class TreeFormat { kNewick, kDot };

std::optional<TreeFormat> parse_tree_format(std::string_view name) noexcept;

// Newick branch lengths are parent height minus child height (leaves sit at
// height 0). DOT labels internal nodes with their merge height.
std::string export_tree(const Dendrogram& tree, TreeFormat format);

// Shortest fixed-point rendering with at most six decimals ("0.5", "1").
std::string format_height(double value);

}  // namespace fcd
