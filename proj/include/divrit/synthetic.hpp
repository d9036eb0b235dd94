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

// Generators for property tests and learning sanity checks.

#ifndef DIVRIT_SYNTHETIC_HPP_
#define DIVRIT_SYNTHETIC_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "divrit/corpus.hpp"
#include "divrit/hash.hpp"
#include "divrit/niqqud.hpp"

namespace divrit {

struct RandomWordOptions {
  int min_letters = 1;
  int max_letters = 8;
  double vowel_rate = 0.7;
  double dagesh_rate = 0.2;
};

// A well-formed word: at most one vowel per letter, shin/sin dots only on
// shin, every mark drawn from the inventory.
DiacritizedWord random_word(Rng& rng, const RandomWordOptions& options = {});

// Redraws every decision slot of `word` with probability `rate`.
DiacritizedWord perturb_word(const DiacritizedWord& word, double rate, Rng& rng);

// A corpus in which a cue word fully determines the diacritization of the
// word after it. Each sentence reads "filler cue target filler." where cue
// comes from one of two disjoint classes and the target takes pattern 0 or 1
// accordingly. `majority_share` is the probability of class 0.
struct CueCorpusOptions {
  int targets = 6;
  int cues_per_class = 3;
  int fillers = 12;
  int sentences = 1200;
  double majority_share = 0.5;
  // Alternate the classes instead of drawing them; ignores majority_share.
  bool alternate_classes = false;
};

struct CueCorpus {
  std::vector<Sentence> sentences;
  // Diacritized target forms, [target][class].
  std::vector<std::array<DiacritizedWord, 2>> targets;
};

// Vocabulary is drawn from `vocabulary_seed`, sentences from `seed`, so train
// and held-out splits can share words but not sentences.
CueCorpus make_cue_corpus(const CueCorpusOptions& options, std::uint64_t vocabulary_seed,
                          std::uint64_t seed);

}  // namespace divrit

#endif  // DIVRIT_SYNTHETIC_HPP_
