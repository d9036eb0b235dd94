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

#include "divrit/synthetic.hpp"

#include <set>

#include "divrit/error.hpp"

namespace divrit {
namespace {

constexpr char32_t kFirstLetter = U'\u05D0';
constexpr int kLetterCount = 27;  // alef .. tav, final forms included

constexpr std::array<char32_t, 12> kVowels = {
    mark::kSheva, mark::kHatafSegol, mark::kHatafPatah, mark::kHatafQamats,
    mark::kHiriq, mark::kTsere,      mark::kSegol,      mark::kPatah,
    mark::kQamats, mark::kHolam,     mark::kQubuts,     mark::kQamatsQatan};

char32_t random_letter(Rng& rng) {
  return kFirstLetter + static_cast<char32_t>(rng.index(kLetterCount));
}

void draw_vowel(MarkSet& marks, Rng& rng, double vowel_rate) {
  if (auto v = marks.vowel()) marks.erase(*v);
  if (rng.uniform() < vowel_rate) marks.insert(kVowels[rng.index(kVowels.size())]);
}

void draw_dagesh(MarkSet& marks, Rng& rng, double rate) {
  marks.erase(mark::kDagesh);
  if (rng.uniform() < rate) marks.insert(mark::kDagesh);
}

void draw_shin_dot(LetterCluster& cluster, Rng& rng) {
  if (cluster.base != kShin) return;
  cluster.marks.erase(mark::kShinDot);
  cluster.marks.erase(mark::kSinDot);
  const std::size_t choice = rng.index(3);
  if (choice == 1) cluster.marks.insert(mark::kShinDot);
  if (choice == 2) cluster.marks.insert(mark::kSinDot);
}

DiacritizedWord unique_word(Rng& rng, int letters, std::set<std::u32string>& used) {
  for (;;) {
    DiacritizedWord w;
    for (int i = 0; i < letters; ++i) {
      LetterCluster c{random_letter(rng), {}};
      c.marks.insert(kVowels[rng.index(kVowels.size())]);
      if (rng.uniform() < 0.2) c.marks.insert(mark::kDagesh);
      draw_shin_dot(c, rng);
      w.clusters.push_back(c);
    }
    if (used.insert(strip(w)).second) return w;
  }
}

}  // namespace

DiacritizedWord random_word(Rng& rng, const RandomWordOptions& options) {
  if (options.min_letters < 1 || options.max_letters < options.min_letters)
    throw Error(ErrorCode::ConfigError, "bad letter range");
  const int span = options.max_letters - options.min_letters + 1;
  const int n = options.min_letters + static_cast<int>(rng.index(static_cast<std::size_t>(span)));
  DiacritizedWord w;
  w.clusters.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    LetterCluster c{random_letter(rng), {}};
    draw_vowel(c.marks, rng, options.vowel_rate);
    draw_dagesh(c.marks, rng, options.dagesh_rate);
    draw_shin_dot(c, rng);
    w.clusters.push_back(c);
  }
  return w;
}

DiacritizedWord perturb_word(const DiacritizedWord& word, double rate, Rng& rng) {
  DiacritizedWord out = word;
  for (LetterCluster& c : out.clusters) {
    if (rng.uniform() < rate) draw_vowel(c.marks, rng, 0.7);
    if (rng.uniform() < rate) draw_dagesh(c.marks, rng, 0.5);
    if (rng.uniform() < rate) draw_shin_dot(c, rng);
  }
  return out;
}

CueCorpus make_cue_corpus(const CueCorpusOptions& options, std::uint64_t vocabulary_seed,
                          std::uint64_t seed) {
  if (options.targets < 1 || options.cues_per_class < 1 || options.fillers < 1 ||
      options.sentences < 1 || options.majority_share < 0.0 || options.majority_share > 1.0)
    throw Error(ErrorCode::ConfigError, "bad cue corpus options");

  Rng vocab_rng(vocabulary_seed);
  std::set<std::u32string> used;
  CueCorpus corpus;
  for (int t = 0; t < options.targets; ++t) {
    const DiacritizedWord first = unique_word(vocab_rng, 3, used);
    DiacritizedWord second = first;
    // Same letters, different vowels on every letter.
    for (LetterCluster& c : second.clusters) {
      const auto old = c.marks.vowel();
      while (c.marks.vowel() == old) draw_vowel(c.marks, vocab_rng, 1.0);
    }
    corpus.targets.push_back({first, second});
  }
  std::array<std::vector<DiacritizedWord>, 2> cues;
  for (auto& cls : cues)
    for (int i = 0; i < options.cues_per_class; ++i)
      cls.push_back(unique_word(vocab_rng, 4, used));
  std::vector<DiacritizedWord> fillers;
  for (int i = 0; i < options.fillers; ++i) fillers.push_back(unique_word(vocab_rng, 5, used));

  Rng rng(seed);
  for (int s = 0; s < options.sentences; ++s) {
    const int cls = options.alternate_classes ? s % 2 : (rng.uniform() < options.majority_share ? 0 : 1);
    const auto& target = corpus.targets[rng.index(corpus.targets.size())][static_cast<std::size_t>(cls)];
    const auto& cue = cues[static_cast<std::size_t>(cls)][rng.index(cues[0].size())];
    std::u32string text = to_text(fillers[rng.index(fillers.size())]);
    text += U' ';
    text += to_text(cue);
    text += U' ';
    text += to_text(target);
    text += U' ';
    text += to_text(fillers[rng.index(fillers.size())]);
    text += U'.';
    corpus.sentences.push_back(make_sentence(std::move(text)));
  }
  return corpus;
}

}  // namespace divrit
