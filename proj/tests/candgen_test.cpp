// Copyright 2026 The divrit Authors. All Rights Reserved.
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

#include "divrit/candgen.hpp"

#include "divrit/synthetic.hpp"
#include "support.hpp"

using namespace divrit;
using namespace divrit::testing;

namespace {

DiacritizationPattern pat(std::string_view s) { return pattern_from_string(s); }

// mlk, mla, klb with a few patterns each.
Lexicon small_lexicon() {
  Lexicon::Entries e;
  e[U"\u05DE\u05DC\u05DA"] = {{pat("05B6|05B6|05B0"), 2}, {pat("05B8|05B7|05B0"), 1}};
  e[U"\u05DE\u05DC\u05D0"] = {{pat("05B8|05B5|-"), 5}};
  e[U"\u05DB\u05DC\u05D1"] = {{pat("05B6|05B6|-"), 9}};
  return Lexicon(e);
}

}  // namespace

TEST_SUITE("candgen") {

TEST_CASE("positional similarity") {
  CHECK(positional_similarity(U"\u05DE\u05DC\u05DA", U"\u05DE\u05DC\u05DA") == 3);
  CHECK(positional_similarity(U"\u05DE\u05DC\u05DA", U"\u05DE\u05DC\u05D0") == 2);
  CHECK(positional_similarity(U"\u05DE\u05DC\u05DA", U"\u05DB\u05DC\u05D1") == 1);
}

TEST_CASE("neighbors by similarity") {
  const Lexicon lex = small_lexicon();
  const auto n = knn_neighbors(lex, kMlk, 2);
  REQUIRE(n.size() == 2);
  CHECK(n[0] == Neighbor{kMlk, 3, 3});
  CHECK(n[1] == Neighbor{U"\u05DE\u05DC\u05D0", 2, 5});
  CHECK_THROWS_CODE(knn_neighbors(lex, U"\u05DE\u05DC", 2), ErrorCode::NoNeighbors);
}

TEST_CASE("equal similarity falls back to frequency, then form") {
  Lexicon::Entries e;
  e[U"\u05D0\u05D1"] = {{pat("-|-"), 1}};
  e[U"\u05D2\u05D1"] = {{pat("-|-"), 4}};
  e[U"\u05D3\u05D1"] = {{pat("-|-"), 1}};
  const auto n = knn_neighbors(Lexicon(e), U"\u05D4\u05D1", 3);
  REQUIRE(n.size() == 3);
  CHECK(n[0].form == U"\u05D2\u05D1");
  CHECK(n[1].form == U"\u05D0\u05D1");
  CHECK(n[2].form == U"\u05D3\u05D1");
}

TEST_CASE("in-vocabulary word with k=1 gets its own patterns in frequency order") {
  const Lexicon lex = small_lexicon();
  const auto one = generate_candidates(lex, kMlk, 1, 1);
  REQUIRE(one.candidates.size() == 1);
  CHECK(one.candidates[0] == parse_word(kMelekh));
  const auto two = generate_candidates(lex, kMlk, 1, 2);
  REQUIRE(two.candidates.size() == 2);
  CHECK(two.candidates[1] == parse_word(kMalakh));
  CHECK_FALSE(two.gold_index.has_value());
}

TEST_CASE("coinciding neighbor patterns are merged and the next one promoted") {
  // Query bbb; neighbors abb and bab, both at similarity 2 and frequency 3,
  // share their top pattern.
  Lexicon::Entries e;
  e[U"\u05D0\u05D1\u05D1"] = {{pat("05B7|05B7|-"), 3}};
  e[U"\u05D1\u05D0\u05D1"] = {{pat("05B7|05B7|-"), 2}, {pat("05B4|05B4|-"), 1}};
  const auto set = generate_candidates(Lexicon(e), U"\u05D1\u05D1\u05D1", 5, 2);
  REQUIRE(set.candidates.size() == 2);
  CHECK(extract_pattern(set.candidates[0]) == pat("05B7|05B7|-"));
  CHECK(extract_pattern(set.candidates[1]) == pat("05B4|05B4|-"));
  for (const auto& c : set.candidates) CHECK(strip(c) == U"\u05D1\u05D1\u05D1");
}

TEST_CASE("oracle injection") {
  const Lexicon lex = small_lexicon();
  const auto present = oracle_candidates(lex, kMlk, parse_word(kMalakh), 1, 2);
  REQUIRE(present.candidates.size() == 2);
  CHECK(present.gold_index == 1u);

  // Gold absent from a full set: it replaces the last candidate.
  const DiacritizedWord odd = apply_pattern(kMlk, pat("05B4|05B4|05B0"));
  const auto full = oracle_candidates(lex, kMlk, odd, 1, 2);
  REQUIRE(full.candidates.size() == 2);
  CHECK(full.candidates[0] == parse_word(kMelekh));
  CHECK(full.candidates[1] == odd);
  CHECK(full.gold_index == 1u);

  // Set not full: gold appended.
  const auto short_set = oracle_candidates(lex, kMlk, odd, 1, 3);
  REQUIRE(short_set.candidates.size() == 3);
  CHECK(short_set.gold_index == 2u);

  const DiacritizedWord lone = parse_word(std::u32string_view(U"\u05D0\u05B7\u05D1"));
  const auto none = oracle_candidates(lex, U"\u05D0\u05D1", lone, 5, 2);
  REQUIRE(none.candidates.size() == 1);
  CHECK(none.gold_index == 0u);

  CHECK_THROWS_CODE(oracle_candidates(lex, U"\u05DE\u05DC\u05D0", odd, 1, 2), ErrorCode::StripMismatch);
}

TEST_CASE("coverage is monotone in c and k and the curve matches point queries") {
  Rng rng(5);
  LexiconBuilder builder;
  std::vector<TestPair> pairs;
  RandomWordOptions opt;
  opt.min_letters = 2;
  opt.max_letters = 4;
  for (int i = 0; i < 600; ++i) {
    const DiacritizedWord w = random_word(rng, opt);
    if (i < 400) builder.add(w); else pairs.push_back({strip(w), w});
  }
  const Lexicon lex = builder.build();
  const CandidateGenerator gen(lex);
  for (int k : {1, 3, 5}) {
    const auto curve = coverage_curve(gen, pairs, k, 8);
    REQUIRE(curve.size() == 8);
    for (int c = 1; c <= 8; ++c) {
      CHECK(curve[c - 1] == coverage(gen, pairs, k, c));
      if (c > 1) CHECK(curve[c - 1] >= curve[c - 2]);
    }
  }
  for (int c = 1; c <= 4; ++c)
    for (int k = 2; k <= 6; ++k) CHECK(coverage(gen, pairs, k, c) >= coverage(gen, pairs, k - 1, c));
}

TEST_CASE("exhaustive c covers an in-vocabulary test set") {
  const Lexicon lex = small_lexicon();
  const std::vector<TestPair> pairs{{kMlk, parse_word(kMelekh)}, {kMlk, parse_word(kMalakh)}};
  CHECK(coverage(CandidateGenerator(lex), pairs, 5, 10) == 1.0);
}

}  // TEST_SUITE
