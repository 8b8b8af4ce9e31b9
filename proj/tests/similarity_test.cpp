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

#include <gtest/gtest.h>

#include "fcd/errors.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace fcd {
namespace {

Dictionary dict_of(std::string_view text, std::string id = "d") {
  return extract_dictionary(normalize(text, LanguageRule::kNone, std::move(id)));
}

const char* const kLong = "to be or not to be or not to be or what";
const char* const kShort = "to be or not to be";

TEST(IntersectionTest, SelfAndDisjoint) {
  const auto d = dict_of(kLong);
  EXPECT_EQ(intersection_count(d, d), d.size());
  const auto other = dict_of("alpha beta gamma alpha beta");
  EXPECT_EQ(intersection_count(d, other), 0u);
}

TEST(IntersectionTest, TraceDictionaries) {
  const auto x = dict_of(kLong), y = dict_of(kShort);
  EXPECT_EQ(intersection_count(x, y), 8u);
  EXPECT_EQ(intersection_count(y, x), 8u);
  EXPECT_EQ(intersection_count_merge(x, y), 8u);
  EXPECT_EQ(intersection_count_search(x, y), 8u);
  EXPECT_EQ(intersection_count_search(y, x), 8u);
}

TEST(IntersectionTest, EmptyDictionary) {
  const Dictionary empty;
  EXPECT_EQ(intersection_count(empty, dict_of(kLong)), 0u);
  EXPECT_EQ(intersection_count_search(dict_of(kLong), empty), 0u);
}

TEST(FcdTest, TraceValuesShowAsymmetry) {
  const auto x = dict_of(kLong), y = dict_of(kShort);
  EXPECT_DOUBLE_EQ(fcd(x, y), 1.0 / 3.0);
  EXPECT_EQ(fcd(y, x), 0.0);
}

TEST(FcdTest, IdentityAndDisjoint) {
  const auto d = dict_of(kLong);
  EXPECT_EQ(fcd(d, d), 0.0);
  EXPECT_EQ(fcd(d, dict_of("alpha beta gamma")), 1.0);
}

TEST(FcdTest, EmptyQueryIsUndefined) {
  EXPECT_THROW(fcd(Dictionary(), dict_of(kLong)), UndefinedDistanceError);
  EXPECT_EQ(fcd(dict_of(kLong), Dictionary()), 1.0);
}

std::vector<std::string> random_tokens(testing::Rng& rng) {
  static const std::vector<std::string> kAlphabet{"a", "b", "c", "d", "e", "f"};
  std::vector<std::string> out(rng.below(40));
  for (auto& t : out) t = kAlphabet[rng.below(kAlphabet.size())];
  return out;
}

TEST(FcdPropertyTest, OracleRangeAndContainment) {
  testing::Rng rng(21);
  for (int iter = 0; iter < 3000; ++iter) {
    TokenSequence sa, sb;
    sa.tokens = random_tokens(rng);
    sb.tokens = random_tokens(rng);
    if (rng.below(4) == 0) {
      // b extends a, so D(a) ⊆ D(b).
      sb.tokens.insert(sb.tokens.begin(), sa.tokens.begin(), sa.tokens.end());
    }
    const auto a = extract_dictionary(sa), b = extract_dictionary(sb);
    const auto expected = testing::naive_intersection(a.entries(), b.entries());
    ASSERT_EQ(intersection_count(a, b), expected);
    ASSERT_EQ(intersection_count(b, a), expected);
    ASSERT_EQ(intersection_count_merge(a, b), expected);
    ASSERT_EQ(intersection_count_search(a, b), expected);
    ASSERT_EQ(intersection_count_search(b, a), expected);
    ASSERT_LE(expected, std::min(a.size(), b.size()));
    if (a.empty()) continue;
    const double v = fcd(a, b);
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 1.0);
    ASSERT_EQ(fcd(a, a), 0.0);
    const bool contained = expected == a.size();
    ASSERT_EQ(contained, v == 0.0);
  }
}

TEST(CompressSizeTest, SmallExamples) {
  EXPECT_EQ(compress_size(""), 0u);
  EXPECT_EQ(compress_size("a"), 1u);
  // Two-byte repeats inside the input are literals: a|b|a|b|ab.
  EXPECT_EQ(compress_size("ababab"), 5u);
  EXPECT_EQ(compress_size("ababababab"), 6u);  // a|b|a|b|abab|ab
  EXPECT_EQ(compress_size("abcabc"), 4u);      // a|b|c|abc
  EXPECT_EQ(compress_size("aaaa"), 3u);        // a|a|aa
}

TEST(CompressSizeTest, MatchesBruteForceParser) {
  testing::Rng rng(22);
  for (int iter = 0; iter < 1500; ++iter) {
    std::string s(rng.below(120), ' ');
    const std::size_t alphabet = 1 + rng.below(4);
    for (auto& c : s) c = static_cast<char>('a' + rng.below(alphabet));
    ASSERT_EQ(compress_size(s), testing::naive_phrase_count(s, kMinMatch)) << s;
    for (std::size_t min_match : {1, 2, 4}) {
      PhraseCounter counter(min_match);
      ASSERT_EQ(counter.compressed_size(s), testing::naive_phrase_count(s, min_match));
    }
  }
}

TEST(CompressSizeTest, HandlesAllByteValues) {
  std::string s;
  for (int rep = 0; rep < 3; ++rep) {
    for (int c = 0; c < 256; ++c) s.push_back(static_cast<char>(c));
  }
  EXPECT_EQ(compress_size(s), testing::naive_phrase_count(s, kMinMatch));
  EXPECT_EQ(compress_size(s), 258u);
}

TEST(CompressSizeTest, DeterministicAndMonotone) {
  testing::Rng rng(23);
  std::string s;
  std::size_t previous = 0;
  for (int i = 0; i < 400; ++i) {
    s.push_back(static_cast<char>('a' + rng.below(3)));
    const auto size = compress_size(s);
    ASSERT_GE(size, previous);
    ASSERT_EQ(size, compress_size(s));
    previous = size;
  }
}

std::string random_bytes(testing::Rng& rng, std::size_t n) {
  std::string s(n, '\0');
  for (auto& c : s) c = static_cast<char>(rng.below(256));
  return s;
}

std::string prose(std::uint64_t seed, std::size_t words) {
  testing::Rng rng(seed);
  const auto vocabulary = testing::make_vocabulary(300, rng);
  return testing::render_text(testing::MarkovAuthor(300, 4, rng).walk(words, rng),
                              vocabulary, rng);
}

TEST(NcdTest, SelfDistanceIsSmall) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto text = prose(seed, 200 * seed);
    ASSERT_GE(text.size(), 1000u);
    EXPECT_LT(ncd(text, text), 0.1) << "seed " << seed;
  }
}

TEST(NcdTest, IndependentRandomStrings) {
  testing::Rng rng(24);
  for (int i = 0; i < 3; ++i) {
    const auto x = random_bytes(rng, 10000), y = random_bytes(rng, 10000);
    const double v = ncd(x, y);
    EXPECT_GT(v, 0.9);
    EXPECT_LT(v, 1.1);
  }
}

TEST(NcdTest, SharedPatternsCompressBetterTogether) {
  testing::Rng rng(25);
  std::string ab;
  for (int i = 0; i < 500; ++i) ab += "ab";
  const std::string with_tail = ab + random_bytes(rng, 200);
  const std::string noise = random_bytes(rng, with_tail.size());
  EXPECT_LT(ncd(ab, with_tail), ncd(ab, noise));
}

TEST(NcdTest, EmptyInputIsUndefined) {
  EXPECT_THROW(ncd("", "abc"), UndefinedDistanceError);
  EXPECT_THROW(ncd("abc", ""), UndefinedDistanceError);
}

TEST(NcdTest, FromSizes) {
  EXPECT_DOUBLE_EQ(ncd_from_sizes(10, 20, 25), 15.0 / 20.0);
  EXPECT_THROW(ncd_from_sizes(0, 20, 25), UndefinedDistanceError);
}

}  // namespace
}  // namespace fcd
