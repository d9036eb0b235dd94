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

// Positional KNN candidate generation.
//
// Neighbors of w are lexicon keys of the same letter count, ranked by the
// number of positions holding the same letter. Their frequency-sorted
// pattern lists are concatenated in neighbor order, each pattern is applied
// to w, repeated forms are removed and the first c survivors are returned.

#ifndef DIVRIT_CANDGEN_HPP_
#define DIVRIT_CANDGEN_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "divrit/corpus.hpp"
#include "divrit/niqqud.hpp"

namespace divrit {

inline constexpr int kDefaultNeighbors = 5;   // k
inline constexpr int kDefaultCandidates = 2;  // c

struct Neighbor {
  std::u32string form;
  int similarity = 0;
  std::int64_t corpus_freq = 0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

using NeighborList = std::vector<Neighbor>;

struct CandidateSet {
  std::u32string query;
  std::vector<DiacritizedWord> candidates;
  std::optional<std::size_t> gold_index;
};

// Number of positions i with a[i] == b[i]; the strings must be equal length.
int positional_similarity(std::u32string_view a, std::u32string_view b);

// Indexes a lexicon's keys by letter count. The lexicon must outlive the
// generator.
class CandidateGenerator {
 public:
  explicit CandidateGenerator(const Lexicon& lexicon);
  explicit CandidateGenerator(Lexicon&&) = delete;

  const Lexicon& lexicon() const { return *lexicon_; }

  // Throws NoNeighbors when no key has |w| letters.
  NeighborList neighbors(std::u32string_view w, int k) const;
  CandidateSet generate(std::u32string_view w, int k, int c) const;
  // Gold is guaranteed a place: it replaces the last candidate of a full set
  // or is appended. Falls back to {gold} when w has no neighbors.
  CandidateSet oracle(std::u32string_view w, const DiacritizedWord& gold, int k,
                      int c) const;

 private:
  struct Key {
    std::u32string form;
    std::int64_t freq;
  };
  const Lexicon* lexicon_;
  std::unordered_map<std::size_t, std::vector<Key>> by_length_;
};

NeighborList knn_neighbors(const Lexicon& lexicon, std::u32string_view w, int k);
CandidateSet generate_candidates(const Lexicon& lexicon, std::u32string_view w,
                                 int k, int c);
CandidateSet oracle_candidates(const Lexicon& lexicon, std::u32string_view w,
                               const DiacritizedWord& gold, int k, int c);

struct TestPair {
  std::u32string word;
  DiacritizedWord gold;
};

// Fraction of pairs whose gold form is generated; NoNeighbors counts as a miss.
double coverage(const CandidateGenerator& generator, std::span<const TestPair> pairs,
                int k, int c);

// Coverage for every c in [1, max_c] from one generation pass per pair.
std::vector<double> coverage_curve(const CandidateGenerator& generator,
                                   std::span<const TestPair> pairs, int k, int max_c);

// Hebrew-word (form, gold) pairs of a corpus; unparsable tokens are skipped.
std::vector<TestPair> collect_test_pairs(std::span<const Sentence> corpus);

}  // namespace divrit

#endif  // DIVRIT_CANDGEN_HPP_
