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

#ifndef DIVRIT_CORPUS_HPP_
#define DIVRIT_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "divrit/niqqud.hpp"

namespace divrit {

struct Token {
  std::size_t begin = 0;  // offsets into Sentence::text, in scalars
  std::size_t end = 0;
  bool is_hebrew_word = false;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::u32string text;
  std::vector<Token> tokens;
  // Offset of text[0] within the raw input the sentence was chunked from.
  std::size_t source_offset = 0;

  std::u32string_view token_text(std::size_t i) const {
    return std::u32string_view(text).substr(tokens[i].begin,
                                            tokens[i].end - tokens[i].begin);
  }
};

// Characters a chunk must reach before a line break closes it.
inline constexpr std::size_t kChunkLineBreakThreshold = 200;

// Splits after every '.', and at the first line break once a chunk holds at
// least kChunkLineBreakThreshold scalars (marks included). Chunks are
// whitespace-trimmed; empty ones are dropped. Tokens are filled in.
std::vector<Sentence> chunk_text(std::u32string_view raw);

std::vector<Token> tokenize(std::u32string_view text);

Sentence make_sentence(std::u32string text);

// Removes every combining mark; presentation forms are decomposed first.
std::u32string strip_marks(std::u32string_view text);

// --- Lexicon -----------------------------------------------------------

struct PatternCount {
  DiacritizationPattern pattern;
  std::int64_t count = 0;

  friend bool operator==(const PatternCount&, const PatternCount&) = default;
};

// Undiacritized form -> patterns by count descending, ties by serialized
// pattern ascending.
class Lexicon {
 public:
  using Entries = std::map<std::u32string, std::vector<PatternCount>>;

  Lexicon() = default;
  // Sorts each list and merges duplicate patterns.
  explicit Lexicon(Entries entries);

  const Entries& entries() const { return entries_; }
  const std::vector<PatternCount>* find(std::u32string_view form) const;
  bool contains(std::u32string_view form) const { return find(form) != nullptr; }
  // Sum of counts in the entry; 0 for absent forms.
  std::int64_t frequency(std::u32string_view form) const;
  std::int64_t total_tokens() const { return total_tokens_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const Lexicon&, const Lexicon&) = default;

 private:
  Entries entries_;
  std::int64_t total_tokens_ = 0;
};

class LexiconBuilder {
 public:
  void add(const DiacritizedWord& word, std::int64_t count = 1);
  Lexicon build() const;

 private:
  std::map<std::u32string, std::map<std::string, std::int64_t>> counts_;
};

struct BuildOptions {
  bool strict = false;
  std::string source_label;  // prefixed to strict-mode error locations
};

struct BuildStats {
  std::int64_t hebrew_tokens = 0;
  std::int64_t parsed_tokens = 0;
  std::int64_t skipped_tokens = 0;
};

Lexicon build_lexicon(std::span<const Sentence> corpus, BuildOptions options = {},
                      BuildStats* stats = nullptr);

// Caps the top pattern of each multi-pattern entry at the combined count of
// the others.
Lexicon balanced_cap(const Lexicon& lexicon);

inline constexpr std::string_view kLexiconMagic = "DIVRIT-LEX 1";

void write_lexicon(std::ostream& out, const Lexicon& lexicon);
Lexicon read_lexicon(std::istream& in);
void save_lexicon(const std::filesystem::path& path, const Lexicon& lexicon);
Lexicon load_lexicon(const std::filesystem::path& path);

// --- Sampling ----------------------------------------------------------

inline constexpr double kSamplingExponent = 0.75;

double sampling_weight(std::int64_t freq);

struct SamplingTable {
  std::vector<std::u32string> forms;
  std::vector<double> weights;     // normalized, sum to 1
  std::vector<double> cumulative;  // running sums of weights
  double normalization = 0.0;      // sum of raw weights

  static SamplingTable from_lexicon(const Lexicon& lexicon);
  // u in [0, 1).
  std::size_t sample(double u) const;
};

// --- Corpus files ------------------------------------------------------

struct Document {
  std::filesystem::path path;
  std::vector<Sentence> sentences;
};

std::u32string read_text_file(const std::filesystem::path& path);
// Files are taken as given; directories are walked recursively in sorted
// path order, skipping dot-files.
std::vector<std::filesystem::path> expand_corpus_paths(
    std::span<const std::filesystem::path> inputs);
std::vector<Document> load_corpus(std::span<const std::filesystem::path> inputs);
std::vector<Sentence> flatten(std::span<const Document> documents);

}  // namespace divrit

#endif  // DIVRIT_CORPUS_HPP_
