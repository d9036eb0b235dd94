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

#include "divrit/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "divrit/error.hpp"
#include "divrit/unicode.hpp"

namespace divrit {

namespace fs = std::filesystem;

namespace {

enum class CharClass { Space, Hebrew, Other };

CharClass classify(char32_t c) {
  if (unicode::is_space(c)) return CharClass::Space;
  if (unicode::is_hebrew_letter(c) || unicode::is_hebrew_mark(c))
    return CharClass::Hebrew;
  return CharClass::Other;
}

bool is_hebrew_class(char32_t c) { return classify(c) == CharClass::Hebrew; }

}  // namespace

std::vector<Token> tokenize(std::u32string_view text) {
  std::vector<Token> tokens;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    const CharClass cls = classify(text[i]);
    if (cls == CharClass::Space) {
      ++i;
      continue;
    }
    const std::size_t begin = i++;
    while (i < n) {
      const char32_t c = text[i];
      if (unicode::is_generic_combining(c)) {
        ++i;
        continue;
      }
      if (cls == CharClass::Hebrew && unicode::is_word_internal_punct(c)) {
        std::size_t j = i;
        while (j < n && unicode::is_word_internal_punct(text[j])) ++j;
        if (j < n && is_hebrew_class(text[j])) {
          i = j;
          continue;
        }
        break;
      }
      if (classify(c) != cls) break;
      ++i;
    }
    bool hebrew = false;
    if (cls == CharClass::Hebrew)
      for (std::size_t k = begin; k < i && !hebrew; ++k)
        hebrew = unicode::is_hebrew_letter(text[k]);
    tokens.push_back({begin, i, hebrew});
  }
  return tokens;
}

Sentence make_sentence(std::u32string text) {
  Sentence s;
  s.text = std::move(text);
  s.tokens = tokenize(s.text);
  return s;
}

std::vector<Sentence> chunk_text(std::u32string_view raw) {
  std::vector<Sentence> out;
  auto emit = [&](std::size_t begin, std::size_t end) {
    while (begin < end && unicode::is_space(raw[begin])) ++begin;
    while (end > begin && unicode::is_space(raw[end - 1])) --end;
    if (begin == end) return;
    Sentence s = make_sentence(std::u32string(raw.substr(begin, end - begin)));
    s.source_offset = begin;
    out.push_back(std::move(s));
  };
  std::size_t start = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char32_t c = raw[i];
    if (c == U'.') {
      emit(start, i + 1);
      start = i + 1;
    } else if (c == U'\n' && i - start >= kChunkLineBreakThreshold) {
      emit(start, i + 1);
      start = i + 1;
    }
  }
  emit(start, raw.size());
  return out;
}

std::u32string strip_marks(std::u32string_view text) {
  std::u32string out;
  for (char32_t c : unicode::decompose(text))
    if (!unicode::is_combining(c)) out.push_back(c);
  return out;
}

// --- Lexicon -----------------------------------------------------------

namespace {

void sort_patterns(std::vector<PatternCount>& list) {
  std::vector<std::pair<std::string, PatternCount>> keyed;
  keyed.reserve(list.size());
  for (auto& pc : list) keyed.emplace_back(pattern_to_string(pc.pattern), std::move(pc));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.second.count != b.second.count) return a.second.count > b.second.count;
    return a.first < b.first;
  });
  list.clear();
  for (auto& [key, pc] : keyed) list.push_back(std::move(pc));
}

}  // namespace

Lexicon::Lexicon(Entries entries) : entries_(std::move(entries)) {
  for (auto it = entries_.begin(); it != entries_.end();) {
    auto& list = it->second;
    std::erase_if(list, [](const PatternCount& pc) { return pc.count <= 0; });
    for (const auto& pc : list)
      if (pc.pattern.size() != it->first.size())
        throw Error(ErrorCode::LengthMismatch,
                    "pattern length differs from key " + unicode::encode_utf8(it->first));
    if (list.empty()) {
      it = entries_.erase(it);
      continue;
    }
    std::map<std::string, PatternCount> merged;
    for (auto& pc : list) {
      auto [pos, inserted] = merged.try_emplace(pattern_to_string(pc.pattern), pc);
      if (!inserted) pos->second.count += pc.count;
    }
    list.clear();
    for (auto& [key, pc] : merged) list.push_back(std::move(pc));
    sort_patterns(list);
    for (const auto& pc : list) total_tokens_ += pc.count;
    ++it;
  }
}

const std::vector<PatternCount>* Lexicon::find(std::u32string_view form) const {
  const auto it = entries_.find(std::u32string(form));
  return it == entries_.end() ? nullptr : &it->second;
}

std::int64_t Lexicon::frequency(std::u32string_view form) const {
  const auto* list = find(form);
  if (list == nullptr) return 0;
  std::int64_t total = 0;
  for (const auto& pc : *list) total += pc.count;
  return total;
}

void LexiconBuilder::add(const DiacritizedWord& word, std::int64_t count) {
  counts_[strip(word)][pattern_to_string(extract_pattern(word))] += count;
}

Lexicon LexiconBuilder::build() const {
  Lexicon::Entries entries;
  for (const auto& [form, patterns] : counts_) {
    auto& list = entries[form];
    for (const auto& [key, count] : patterns)
      list.push_back({pattern_from_string(key), count});
  }
  return Lexicon(std::move(entries));
}

Lexicon build_lexicon(std::span<const Sentence> corpus, BuildOptions options,
                      BuildStats* stats) {
  LexiconBuilder builder;
  BuildStats local;
  for (std::size_t si = 0; si < corpus.size(); ++si) {
    const Sentence& sentence = corpus[si];
    for (std::size_t ti = 0; ti < sentence.tokens.size(); ++ti) {
      if (!sentence.tokens[ti].is_hebrew_word) continue;
      ++local.hebrew_tokens;
      try {
        builder.add(parse_word(sentence.token_text(ti), ParseOptions{options.strict}));
        ++local.parsed_tokens;
      } catch (const Error& e) {
        if (options.strict) {
          std::ostringstream where;
          if (!options.source_label.empty()) where << options.source_label << ':';
          where << "offset " << sentence.source_offset + sentence.tokens[ti].begin;
          throw Error(e.code(), where.str() + ": " + e.detail());
        }
        ++local.skipped_tokens;
      }
    }
  }
  if (stats != nullptr) *stats = local;
  return builder.build();
}

Lexicon balanced_cap(const Lexicon& lexicon) {
  Lexicon::Entries entries = lexicon.entries();
  for (auto& [form, list] : entries) {
    if (list.size() < 2) continue;
    std::int64_t others = 0;
    for (std::size_t i = 1; i < list.size(); ++i) others += list[i].count;
    list.front().count = std::min(list.front().count, others);
  }
  return Lexicon(std::move(entries));
}

void write_lexicon(std::ostream& out, const Lexicon& lexicon) {
  out << kLexiconMagic << '\n';
  for (const auto& [form, list] : lexicon.entries()) {
    std::int64_t total = 0;
    for (const auto& pc : list) total += pc.count;
    out << unicode::encode_utf8(form) << '\t' << total << '\t';
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i > 0) out << ',';
      out << pattern_to_string(list[i].pattern) << ':' << list[i].count;
    }
    out << '\n';
  }
}

namespace {

std::int64_t parse_count(std::string_view text, std::size_t line_no) {
  std::int64_t value = 0;
  if (text.empty()) throw Error(ErrorCode::FormatError, "line " + std::to_string(line_no) + ": empty count");
  for (char ch : text) {
    if (ch < '0' || ch > '9')
      throw Error(ErrorCode::FormatError,
                  "line " + std::to_string(line_no) + ": bad count '" + std::string(text) + "'");
    value = value * 10 + (ch - '0');
  }
  return value;
}

}  // namespace

Lexicon read_lexicon(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kLexiconMagic)
    throw Error(ErrorCode::FormatError, "missing header '" + std::string(kLexiconMagic) + "'");
  Lexicon::Entries entries;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos)
      throw Error(ErrorCode::FormatError, "line " + std::to_string(line_no) + ": expected 3 fields");
    const std::u32string form = unicode::decode_utf8(std::string_view(line).substr(0, tab1));
    const std::int64_t total =
        parse_count(std::string_view(line).substr(tab1 + 1, tab2 - tab1 - 1), line_no);
    std::vector<PatternCount> list;
    std::string_view rest = std::string_view(line).substr(tab2 + 1);
    std::int64_t sum = 0;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto colon = item.rfind(':');
      if (colon == std::string_view::npos)
        throw Error(ErrorCode::FormatError, "line " + std::to_string(line_no) + ": pattern without count");
      PatternCount pc{pattern_from_string(item.substr(0, colon)),
                      parse_count(item.substr(colon + 1), line_no)};
      sum += pc.count;
      list.push_back(std::move(pc));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (sum != total)
      throw Error(ErrorCode::FormatError, "line " + std::to_string(line_no) + ": counts do not sum to total");
    if (entries.contains(form))
      throw Error(ErrorCode::FormatError, "line " + std::to_string(line_no) + ": duplicate entry");
    entries.emplace(form, std::move(list));
  }
  return Lexicon(std::move(entries));
}

void save_lexicon(const fs::path& path, const Lexicon& lexicon) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  write_lexicon(out, lexicon);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

Lexicon load_lexicon(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  try {
    return read_lexicon(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

// --- Sampling ----------------------------------------------------------

double sampling_weight(std::int64_t freq) {
  return std::pow(static_cast<double>(freq), kSamplingExponent);
}

SamplingTable SamplingTable::from_lexicon(const Lexicon& lexicon) {
  SamplingTable table;
  for (const auto& [form, list] : lexicon.entries()) {
    std::int64_t freq = 0;
    for (const auto& pc : list) freq += pc.count;
    table.forms.push_back(form);
    table.weights.push_back(sampling_weight(freq));
  }
  for (double w : table.weights) table.normalization += w;
  double running = 0.0;
  for (double& w : table.weights) {
    w /= table.normalization;
    running += w;
    table.cumulative.push_back(running);
  }
  return table;
}

std::size_t SamplingTable::sample(double u) const {
  if (cumulative.empty()) throw Error(ErrorCode::ConfigError, "empty sampling table");
  const double target = u * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
  return std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1);
}

// --- Corpus files ------------------------------------------------------

std::u32string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string bytes = buf.str();
  if (bytes.starts_with("\xEF\xBB\xBF")) bytes.erase(0, 3);
  return unicode::decode_utf8(bytes);
}

std::vector<fs::path> expand_corpus_paths(std::span<const fs::path> inputs) {
  std::vector<fs::path> files;
  for (const auto& input : inputs) {
    if (fs::is_directory(input)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::recursive_directory_iterator(input)) {
        if (!entry.is_regular_file()) continue;
        if (entry.path().filename().string().starts_with(".")) continue;
        found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(input)) {
      files.push_back(input);
    } else {
      throw Error(ErrorCode::IoError, "no such file or directory: " + input.string());
    }
  }
  return files;
}

std::vector<Document> load_corpus(std::span<const fs::path> inputs) {
  std::vector<Document> docs;
  for (const auto& file : expand_corpus_paths(inputs))
    docs.push_back({file, chunk_text(read_text_file(file))});
  return docs;
}

std::vector<Sentence> flatten(std::span<const Document> documents) {
  std::vector<Sentence> out;
  for (const auto& doc : documents)
    out.insert(out.end(), doc.sentences.begin(), doc.sentences.end());
  return out;
}

}  // namespace divrit
