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

#include "fcd/similarity.hpp"

#include <algorithm>
#include <string>

#include "fcd/errors.hpp"

namespace fcd {

std::size_t intersection_count_merge(const Dictionary& a, const Dictionary& b) {
  const auto& x = a.entries();
  const auto& y = b.entries();
  std::size_t i = 0, j = 0, shared = 0;
  while (i < x.size() && j < y.size()) {
    const int c = x[i].compare(y[j]);
    if (c < 0) {
      ++i;
    } else if (c > 0) {
      ++j;
    } else {
      ++shared;
      ++i;
      ++j;
    }
  }
  return shared;
}

std::size_t intersection_count_search(const Dictionary& query,
                                      const Dictionary& reference) {
  const auto& ref = reference.entries();
  std::size_t shared = 0;
  // Queries arrive sorted, so each search can start where the last ended.
  auto from = ref.begin();
  for (const auto& pattern : query.entries()) {
    from = std::lower_bound(from, ref.end(), pattern);
    if (from == ref.end()) break;
    if (*from == pattern) ++shared;
  }
  return shared;
}

std::size_t intersection_count(const Dictionary& a, const Dictionary& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  if (small.size() * 16 < large.size()) {
    return intersection_count_search(small, large);
  }
  return intersection_count_merge(a, b);
}

double fcd(const Dictionary& x, const Dictionary& y) {
  if (x.empty()) {
    throw UndefinedDistanceError("FCD undefined: dictionary '" + x.source_id() +
                                 "' is empty");
  }
  const std::size_t n = x.size();
  const std::size_t missing = n - intersection_count(x, y);
  return static_cast<double>(missing) / static_cast<double>(n);
}

PhraseCounter::PhraseCounter(std::size_t min_match)
    : root_edges_(256, -1), min_match_(std::max<std::size_t>(min_match, 1)) {
  reset();
}

void PhraseCounter::reset() {
  states_.clear();
  edges_.clear();
  std::fill(root_edges_.begin(), root_edges_.end(), -1);
  states_.push_back({0, -1, -1});
  last_ = 0;
}

std::int32_t PhraseCounter::transition(std::int32_t state,
                                       std::uint8_t byte) const {
  if (state == 0) return root_edges_[byte];
  for (auto e = states_[state].first_edge; e >= 0; e = edges_[e].next) {
    if (edges_[e].byte == byte) return edges_[e].to;
  }
  return -1;
}

void PhraseCounter::set_transition(std::int32_t state, std::uint8_t byte,
                                   std::int32_t to) {
  if (state == 0) {
    root_edges_[byte] = to;
    return;
  }
  for (auto e = states_[state].first_edge; e >= 0; e = edges_[e].next) {
    if (edges_[e].byte == byte) {
      edges_[e].to = to;
      return;
    }
  }
  edges_.push_back({to, states_[state].first_edge, byte});
  states_[state].first_edge = static_cast<std::int32_t>(edges_.size() - 1);
}

std::int32_t PhraseCounter::clone_state(std::int32_t source, std::int32_t len) {
  const auto id = static_cast<std::int32_t>(states_.size());
  states_.push_back({len, states_[source].link, -1});
  // Never called on the root: nothing transitions into it.
  for (auto e = states_[source].first_edge; e >= 0; e = edges_[e].next) {
    const Edge copy = edges_[e];
    edges_.push_back({copy.to, states_[id].first_edge, copy.byte});
    states_[id].first_edge = static_cast<std::int32_t>(edges_.size() - 1);
  }
  return id;
}

void PhraseCounter::extend(std::uint8_t byte) {
  const auto cur = static_cast<std::int32_t>(states_.size());
  states_.push_back({states_[last_].len + 1, 0, -1});
  std::int32_t p = last_;
  while (p >= 0 && transition(p, byte) < 0) {
    set_transition(p, byte, cur);
    p = states_[p].link;
  }
  if (p >= 0) {
    const std::int32_t q = transition(p, byte);
    if (states_[p].len + 1 == states_[q].len) {
      states_[cur].link = q;
    } else {
      const std::int32_t copy = clone_state(q, states_[p].len + 1);
      while (p >= 0 && transition(p, byte) == q) {
        set_transition(p, byte, copy);
        p = states_[p].link;
      }
      states_[q].link = copy;
      states_[cur].link = copy;
    }
  }
  last_ = cur;
}

std::size_t PhraseCounter::compressed_size(std::string_view bytes) {
  reset();
  const auto* data = reinterpret_cast<const std::uint8_t*>(bytes.data());
  const std::size_t n = bytes.size();
  std::size_t phrases = 0;
  std::size_t i = 0;
  while (i < n) {
    std::int32_t state = 0;
    std::size_t len = 0;
    while (i + len < n) {
      const auto next = transition(state, data[i + len]);
      if (next < 0) break;
      state = next;
      ++len;
    }
    // A matching remainder at end of input is one phrase whatever its length;
    // otherwise appending bytes could merge two literals and lower the count.
    const bool take_match = len >= min_match_ || (len > 0 && i + len == n);
    const std::size_t phrase = take_match ? len : 1;
    for (std::size_t k = 0; k < phrase; ++k) extend(data[i + k]);
    i += phrase;
    ++phrases;
  }
  return phrases;
}

std::size_t compress_size(std::string_view bytes) {
  thread_local PhraseCounter counter;
  return counter.compressed_size(bytes);
}

double ncd_from_sizes(std::size_t cx, std::size_t cy, std::size_t cxy) {
  if (cx == 0 || cy == 0) {
    throw UndefinedDistanceError("NCD undefined for empty input");
  }
  const auto lo = static_cast<double>(std::min(cx, cy));
  const auto hi = static_cast<double>(std::max(cx, cy));
  return (static_cast<double>(cxy) - lo) / hi;
}

double ncd(std::string_view x, std::string_view y) {
  if (x.empty() || y.empty()) {
    throw UndefinedDistanceError("NCD undefined for empty input");
  }
  std::string joined;
  joined.reserve(x.size() + y.size());
  joined.append(x).append(y);
  return ncd_from_sizes(compress_size(x), compress_size(y),
                        compress_size(joined));
}

}  // namespace fcd
