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

#include <algorithm>

#include "divrit/error.hpp"
#include "divrit/unicode.hpp"

namespace divrit {

int positional_similarity(std::u32string_view a, std::u32string_view b) {
  int same = 0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] == b[i]) ++same;
  return same;
}

CandidateGenerator::CandidateGenerator(const Lexicon& lexicon) : lexicon_(&lexicon) {
  for (const auto& [form, list] : lexicon.entries()) {
    std::int64_t freq = 0;
    for (const auto& pc : list) freq += pc.count;
    by_length_[form.size()].push_back({form, freq});
  }
}

namespace {

bool ranks_before(const Neighbor& a, const Neighbor& b) {
  if (a.similarity != b.similarity) return a.similarity > b.similarity;
  if (a.corpus_freq != b.corpus_freq) return a.corpus_freq > b.corpus_freq;
  return a.form < b.form;
}

void check_query(std::u32string_view w) {
  bool any = false;
  for (char32_t c : w) any = any || unicode::is_hebrew_letter(c);
  if (!any) throw Error(ErrorCode::EmptyInput, "query has no Hebrew letter");
}

}  // namespace

NeighborList CandidateGenerator::neighbors(std::u32string_view w, int k) const {
  check_query(w);
  if (k < 1) throw Error(ErrorCode::ConfigError, "k must be positive");
  const auto bucket = by_length_.find(w.size());
  if (bucket == by_length_.end())
    throw Error(ErrorCode::NoNeighbors,
                "no lexicon key of length " + std::to_string(w.size()));
  NeighborList all;
  all.reserve(bucket->second.size());
  for (const Key& key : bucket->second)
    all.push_back({key.form, positional_similarity(w, key.form), key.freq});
  const auto top = std::min<std::size_t>(static_cast<std::size_t>(k), all.size());
  std::partial_sort(all.begin(), all.begin() + top, all.end(), ranks_before);
  all.resize(top);
  return all;
}

CandidateSet CandidateGenerator::generate(std::u32string_view w, int k, int c) const {
  if (c < 1) throw Error(ErrorCode::ConfigError, "c must be positive");
  CandidateSet set;
  set.query = std::u32string(w);
  for (const Neighbor& n : neighbors(w, k)) {
    for (const PatternCount& pc : *lexicon_->find(n.form)) {
      DiacritizedWord candidate = apply_pattern(w, pc.pattern);
      if (std::find(set.candidates.begin(), set.candidates.end(), candidate) !=
          set.candidates.end())
        continue;
      set.candidates.push_back(std::move(candidate));
      if (set.candidates.size() == static_cast<std::size_t>(c)) return set;
    }
  }
  return set;
}

CandidateSet CandidateGenerator::oracle(std::u32string_view w, const DiacritizedWord& gold,
                                        int k, int c) const {
  if (strip(gold) != w)
    throw Error(ErrorCode::StripMismatch, "gold does not strip to the query");
  CandidateSet set;
  try {
    set = generate(w, k, c);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoNeighbors) throw;
    set.query = std::u32string(w);
    set.candidates = {gold};
    set.gold_index = 0;
    return set;
  }
  const auto it = std::find(set.candidates.begin(), set.candidates.end(), gold);
  if (it != set.candidates.end()) {
    set.gold_index = static_cast<std::size_t>(it - set.candidates.begin());
  } else if (set.candidates.size() == static_cast<std::size_t>(c)) {
    set.candidates.back() = gold;
    set.gold_index = set.candidates.size() - 1;
  } else {
    set.candidates.push_back(gold);
    set.gold_index = set.candidates.size() - 1;
  }
  return set;
}

NeighborList knn_neighbors(const Lexicon& lexicon, std::u32string_view w, int k) {
  return CandidateGenerator(lexicon).neighbors(w, k);
}

CandidateSet generate_candidates(const Lexicon& lexicon, std::u32string_view w, int k,
                                 int c) {
  return CandidateGenerator(lexicon).generate(w, k, c);
}

CandidateSet oracle_candidates(const Lexicon& lexicon, std::u32string_view w,
                               const DiacritizedWord& gold, int k, int c) {
  return CandidateGenerator(lexicon).oracle(w, gold, k, c);
}

std::vector<double> coverage_curve(const CandidateGenerator& generator,
                                   std::span<const TestPair> pairs, int k, int max_c) {
  std::vector<double> hits(static_cast<std::size_t>(max_c), 0.0);
  if (pairs.empty()) return hits;
  for (const TestPair& pair : pairs) {
    CandidateSet set;
    try {
      set = generator.generate(pair.word, k, max_c);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoNeighbors) throw;
      continue;
    }
    const auto it = std::find(set.candidates.begin(), set.candidates.end(), pair.gold);
    if (it == set.candidates.end()) continue;
    // Truncating to c keeps a prefix, so a hit at rank r counts for all c > r.
    for (auto c = static_cast<std::size_t>(it - set.candidates.begin()); c < hits.size(); ++c)
      hits[c] += 1.0;
  }
  for (double& h : hits) h /= static_cast<double>(pairs.size());
  return hits;
}

double coverage(const CandidateGenerator& generator, std::span<const TestPair> pairs,
                int k, int c) {
  if (pairs.empty()) return 0.0;
  std::size_t hits = 0;
  for (const TestPair& pair : pairs) {
    try {
      const CandidateSet set = generator.generate(pair.word, k, c);
      if (std::find(set.candidates.begin(), set.candidates.end(), pair.gold) !=
          set.candidates.end())
        ++hits;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoNeighbors) throw;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(pairs.size());
}

std::vector<TestPair> collect_test_pairs(std::span<const Sentence> corpus) {
  std::vector<TestPair> pairs;
  for (const Sentence& s : corpus) {
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      if (!s.tokens[i].is_hebrew_word) continue;
      try {
        DiacritizedWord gold = parse_word(s.token_text(i));
        pairs.push_back({strip(gold), std::move(gold)});
      } catch (const Error&) {
      }
    }
  }
  return pairs;
}

}  // namespace divrit
