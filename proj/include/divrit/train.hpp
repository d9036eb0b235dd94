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

// Training on oracle candidate sets.
//
// Each step draws a batch of word occurrences: a form with probability
// proportional to freq^0.75, then one of its patterns in proportion to its
// count (capped counts with `balanced`), then a uniformly chosen occurrence
// with that pattern. Candidates come from the oracle generator so the gold
// form is always present. Parameters move by SGD with momentum on the batch
// mean gradient.

#ifndef DIVRIT_TRAIN_HPP_
#define DIVRIT_TRAIN_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "divrit/candgen.hpp"
#include "divrit/corpus.hpp"
#include "divrit/model.hpp"

namespace divrit {

// One target word in context with its candidate set.
struct LabeledExample {
  std::vector<std::u32string> tokens;  // undiacritized
  std::size_t target = 0;
  CandidateSet candidates;              // gold_index set
};

struct Occurrence {
  std::size_t sentence = 0;
  std::size_t token = 0;
};

// Occurrences of every parsable Hebrew token of a diacritized corpus, keyed
// by form and serialized pattern.
class OccurrenceIndex {
 public:
  explicit OccurrenceIndex(std::span<const Sentence> corpus);

  std::span<const Sentence> corpus() const { return corpus_; }
  const std::vector<Occurrence>* find(const std::u32string& form,
                                      const std::string& pattern) const;
  const std::vector<Occurrence>& all() const { return all_; }
  LabeledExample example(const Occurrence& occ, const CandidateGenerator& generator, int k,
                         int c) const;

 private:
  std::span<const Sentence> corpus_;
  std::map<std::u32string, std::map<std::string, std::vector<Occurrence>>> index_;
  std::vector<Occurrence> all_;
};

// Every occurrence of the corpus as an oracle example, in corpus order.
std::vector<LabeledExample> build_examples(std::span<const Sentence> corpus,
                                           const CandidateGenerator& generator, int k, int c);

struct TrainConfig {
  int steps = 5000;
  int batch_size = 32;
  double learning_rate = 0.05;
  double momentum = 0.9;
  std::uint64_t seed = 1;
  int k = kDefaultNeighbors;
  int c = kDefaultCandidates;
  bool balanced = false;
  // Replace every gold index with a uniformly drawn one (sanity baseline).
  bool shuffle_labels = false;

  void validate() const;
};

struct TraceRow {
  int step = 0;
  double loss = 0.0;
  double cross_entropy = 0.0;
  double auxiliary = 0.0;
  double accuracy = 0.0;  // batch argmax == gold
};

struct TrainResult {
  Model model;
  std::vector<TraceRow> trace;
};

// `corpus` is diacritized; the lexicon used for candidates and sampling is
// built from it. Throws Divergence on a non-finite loss.
TrainResult train(std::span<const Sentence> corpus, Model model, const TrainConfig& config);

ScoringExample<double> to_scoring_example(const LabeledExample& example, const Model& model,
                                          const ReferenceScorer& renderer);

// Fraction of examples whose argmax is the gold candidate.
double oracle_accuracy(const Model& model, std::span<const LabeledExample> examples);

void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace);

}  // namespace divrit

#endif  // DIVRIT_TRAIN_HPP_
