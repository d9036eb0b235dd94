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

// Diacritization metrics, baselines and the evaluation harness.
//
// Every letter carries a vowel decision and a dagesh decision; shin adds a
// shin/sin-dot decision. DEC counts decisions, CHA letters whose decisions
// all match, WOR whole words, and VOC words that match once vowels are
// replaced by their vocalization class. Metrics are micro-averaged over
// Hebrew words whose gold form parses; absent predictions count as wrong
// everywhere.

#ifndef DIVRIT_EVALKIT_HPP_
#define DIVRIT_EVALKIT_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "divrit/candgen.hpp"
#include "divrit/corpus.hpp"
#include "divrit/model.hpp"
#include "divrit/niqqud.hpp"

namespace divrit {

// Vowel mark -> class label. Vowels without an entry form a class of their own.
class VocTable {
 public:
  VocTable() = default;
  explicit VocTable(std::map<char32_t, std::string> classes) : classes_(std::move(classes)) {}

  // A = patah, qamats, hataf patah; E = tsere, segol, hataf segol; I = hiriq;
  // O = holam, hataf qamats, qamats qatan; U = qubuts; SHEVA = sheva.
  static VocTable standard();
  // {"A": ["05B7", "05B8"], ...}; throws ConfigError.
  static VocTable from_json(const std::string& text);

  std::string class_of(std::optional<char32_t> vowel) const;
  const std::map<char32_t, std::string>& classes() const { return classes_; }

 private:
  std::map<char32_t, std::string> classes_;
};

struct WordJudgment {
  std::int64_t decisions_total = 0;
  std::int64_t decisions_correct = 0;
  std::int64_t chars_total = 0;
  std::int64_t chars_correct = 0;
  bool word_correct = false;
  bool voc_correct = false;
};

// Throws StripMismatch when pred has different letters.
WordJudgment judge_word(const DiacritizedWord& gold, const std::optional<DiacritizedWord>& pred,
                        const VocTable& voc = VocTable::standard());

struct AxisCount {
  std::int64_t correct = 0;
  std::int64_t total = 0;

  double percent() const {
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(correct) / static_cast<double>(total);
  }
  friend bool operator==(const AxisCount&, const AxisCount&) = default;
};

struct EvalReport {
  std::string scheme;  // oracle | knn | majority | knn1 | external
  AxisCount dec, cha, wor, voc;
  std::int64_t skipped_tokens = 0;  // Hebrew tokens whose gold does not parse

  void add(const WordJudgment& j);
  void merge(const EvalReport& other);

  std::string to_json(const std::string& run_config_json = "{}") const;
  // Columns in the order DEC CHA WOR VOC.
  std::string to_table() const;
  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

inline constexpr int kReportVersion = 1;

// Judges aligned corpora. Both must have the same sentence and token
// structure and identical undiacritized tokens; throws AlignmentError.
EvalReport evaluate(std::span<const Sentence> gold, std::span<const Sentence> predicted,
                    const std::string& scheme = "external",
                    const VocTable& voc = VocTable::standard());

std::optional<DiacritizedWord> majority_predict(const Lexicon& lexicon, std::u32string_view w);
std::optional<DiacritizedWord> knn1_predict(const CandidateGenerator& generator,
                                            std::u32string_view w);
std::optional<DiacritizedWord> knn1_predict(const Lexicon& lexicon, std::u32string_view w);

// Sees the undiacritized tokens of a sentence, the target index and the
// target's letters; returns the prediction or nothing.
using WordPredictor = std::function<std::optional<DiacritizedWord>(
    std::span<const std::u32string> tokens, std::size_t target, const DiacritizedWord& gold)>;

struct HarnessOptions {
  int threads = 1;
  VocTable voc = VocTable::standard();
};

struct HarnessResult {
  EvalReport report;
  // The test corpus with marks stripped and predictions inserted.
  std::vector<Sentence> predictions;
};

// Predicts every Hebrew word of the gold corpus and judges it. Sentences are
// split across threads; the reduction is in sentence order, so the result
// does not depend on the thread count. The predictor must be thread-safe.
HarnessResult run_predictor(std::span<const Sentence> gold, const WordPredictor& predictor,
                            const std::string& scheme, const HarnessOptions& options = {});

enum class Scheme { Oracle, Knn };
const char* to_string(Scheme s);
Scheme parse_scheme(std::string_view s);

// Per word: oracle or KNN candidate set, scoring in context, argmax.
// NoNeighbors words are judged absent.
HarnessResult run_scheme(Scheme scheme, const CandidateScorer& scorer,
                         const CandidateGenerator& generator, std::span<const Sentence> gold,
                         int k, int c, const HarnessOptions& options = {});

// Rewrites a stripped token with the marks of `word`, keeping word-internal
// punctuation in place.
std::u32string insert_marks(std::u32string_view stripped_token, const DiacritizedWord& word);

void write_corpus(std::ostream& out, std::span<const Sentence> sentences);

}  // namespace divrit

#endif  // DIVRIT_EVALKIT_HPP_
