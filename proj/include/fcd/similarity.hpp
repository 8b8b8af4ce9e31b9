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
#include <cstdint>
#include <string_view>
#include <vector>

#include "fcd/dictionary.hpp"

namespace fcd {

// Number of patterns present in both dictionaries. Symmetric and exact.
// Picks the merge or the search strategy below depending on relative sizes.
std::size_t intersection_count(const Dictionary& a, const Dictionary& b);

// Single linear pass over both sorted entry lists.
std::size_t intersection_count_merge(const Dictionary& a, const Dictionary& b);

// Binary search of every `query` pattern in `reference`, O(|query| log N).
std::size_t intersection_count_search(const Dictionary& query,
                                      const Dictionary& reference);

// (|D(x)| - |D(x) ∩ D(y)|) / |D(x)|, in [0, 1]. Asymmetric.
// Throws UndefinedDistanceError if `x` is empty.
double fcd(const Dictionary& x, const Dictionary& y);

// Greedy LZ77-style parser with an unbounded window. Each phrase is the
// longest substring starting at the current position that already occurs
// entirely inside the consumed prefix, or a single literal byte when that
// match is shorter than `min_match` and does not run to the end of the input.
// compressed_size() counts phrases; it never decreases as input is appended.
//
// Longest matches are found with an online suffix automaton of the consumed
// prefix, so a full parse is linear in the input length. Reuse one instance
// to avoid reallocating between calls; an instance is not thread-safe.
// Matches shorter than this are emitted as literals, as in deflate.
inline constexpr std::size_t kMinMatch = 3;

class PhraseCounter {
 public:
  explicit PhraseCounter(std::size_t min_match = kMinMatch);

  std::size_t compressed_size(std::string_view bytes);

 private:
  void reset();
  std::int32_t transition(std::int32_t state, std::uint8_t byte) const;
  void set_transition(std::int32_t state, std::uint8_t byte, std::int32_t to);
  std::int32_t clone_state(std::int32_t source, std::int32_t len);
  void extend(std::uint8_t byte);

  struct State {
    std::int32_t len;
    std::int32_t link;
    std::int32_t first_edge;
  };
  struct Edge {
    std::int32_t to;
    std::int32_t next;
    std::uint8_t byte;
  };

  std::vector<State> states_;
  std::vector<Edge> edges_;
  std::vector<std::int32_t> root_edges_;  // 256 direct slots for the root
  std::int32_t last_ = 0;
  std::size_t min_match_;
};

// Phrase count of the greedy parse; 0 iff `bytes` is empty. Uses a
// thread-local PhraseCounter.
std::size_t compress_size(std::string_view bytes);

// (C(xy) - min(C(x), C(y))) / max(C(x), C(y)), with C = compress_size and
// xy the concatenation x ++ y. Throws UndefinedDistanceError on empty input.
double ncd(std::string_view x, std::string_view y);

// Same formula from precomputed sizes.
double ncd_from_sizes(std::size_t cx, std::size_t cy, std::size_t cxy);

}  // namespace fcd
