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

#include "divrit/evalkit.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "divrit/unicode.hpp"

namespace divrit {
namespace {

using nlohmann::json;

std::optional<char32_t> shin_slot(const LetterCluster& c) {
  if (c.marks.contains(mark::kShinDot)) return mark::kShinDot;
  if (c.marks.contains(mark::kSinDot)) return mark::kSinDot;
  return std::nullopt;
}

struct TokenRef {
  const Sentence* sentence;
  std::size_t index;
};

std::vector<TokenRef> token_stream(std::span<const Sentence> corpus) {
  std::vector<TokenRef> out;
  for (const Sentence& s : corpus)
    for (std::size_t i = 0; i < s.tokens.size(); ++i) out.push_back({&s, i});
  return out;
}

std::vector<std::u32string> stripped_tokens(const Sentence& s) {
  std::vector<std::u32string> out;
  out.reserve(s.tokens.size());
  for (std::size_t i = 0; i < s.tokens.size(); ++i) out.push_back(strip_marks(s.token_text(i)));
  return out;
}

json axis_json(const AxisCount& a) {
  return {{"percent", a.percent()}, {"correct", a.correct}, {"total", a.total}};
}

}  // namespace

VocTable VocTable::standard() {
  using namespace mark;
  return VocTable({{kPatah, "A"},      {kQamats, "A"},      {kHatafPatah, "A"},
                   {kTsere, "E"},      {kSegol, "E"},       {kHatafSegol, "E"},
                   {kHiriq, "I"},      {kHolam, "O"},       {kHatafQamats, "O"},
                   {kQamatsQatan, "O"}, {kQubuts, "U"},      {kSheva, "SHEVA"}});
}

VocTable VocTable::from_json(const std::string& text) {
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw Error(ErrorCode::ConfigError, "VOC table must be a JSON object");
  std::map<char32_t, std::string> classes;
  for (const auto& [label, marks] : j.items()) {
    if (!marks.is_array()) throw Error(ErrorCode::ConfigError, "VOC class " + label + " is not a list");
    for (const auto& m : marks) {
      if (!m.is_string()) throw Error(ErrorCode::ConfigError, "VOC marks are hex strings");
      const std::string hex = m.get<std::string>();
      char32_t cp = 0;
      try {
        std::size_t used = 0;
        cp = static_cast<char32_t>(std::stoul(hex, &used, 16));
        if (used != hex.size()) throw std::invalid_argument(hex);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ConfigError, "bad mark '" + hex + "' in VOC table");
      }
      if (!is_vowel_mark(cp))
        throw Error(ErrorCode::ConfigError, "'" + hex + "' is not a vowel mark");
      if (!classes.emplace(cp, label).second)
        throw Error(ErrorCode::ConfigError, "mark " + hex + " appears in two classes");
    }
  }
  return VocTable(std::move(classes));
}

std::string VocTable::class_of(std::optional<char32_t> vowel) const {
  if (!vowel) return "-";
  const auto it = classes_.find(*vowel);
  if (it != classes_.end()) return it->second;
  return "U+" + std::to_string(static_cast<std::uint32_t>(*vowel));
}

WordJudgment judge_word(const DiacritizedWord& gold, const std::optional<DiacritizedWord>& pred,
                        const VocTable& voc) {
  WordJudgment j;
  j.chars_total = static_cast<std::int64_t>(gold.size());
  for (const LetterCluster& c : gold.clusters) j.decisions_total += c.base == kShin ? 3 : 2;
  if (!pred) return j;
  if (strip(*pred) != strip(gold))
    throw Error(ErrorCode::StripMismatch, "prediction '" + to_utf8(*pred) +
                                              "' does not match gold '" + to_utf8(gold) + "'");
  bool all_chars = true, all_voc = true;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const LetterCluster& g = gold.clusters[i];
    const LetterCluster& p = pred->clusters[i];
    const bool vowel_ok = g.marks.vowel() == p.marks.vowel();
    const bool dagesh_ok = g.marks.contains(mark::kDagesh) == p.marks.contains(mark::kDagesh);
    const bool shin_ok = g.base != kShin || shin_slot(g) == shin_slot(p);
    j.decisions_correct += (vowel_ok ? 1 : 0) + (dagesh_ok ? 1 : 0);
    if (g.base == kShin) j.decisions_correct += shin_ok ? 1 : 0;
    const bool char_ok = vowel_ok && dagesh_ok && shin_ok;
    j.chars_correct += char_ok ? 1 : 0;
    all_chars = all_chars && char_ok;
    all_voc = all_voc && dagesh_ok && shin_ok &&
              voc.class_of(g.marks.vowel()) == voc.class_of(p.marks.vowel());
  }
  j.word_correct = all_chars;
  j.voc_correct = all_voc;
  return j;
}

void EvalReport::add(const WordJudgment& j) {
  dec.correct += j.decisions_correct;
  dec.total += j.decisions_total;
  cha.correct += j.chars_correct;
  cha.total += j.chars_total;
  wor.correct += j.word_correct ? 1 : 0;
  wor.total += 1;
  voc.correct += j.voc_correct ? 1 : 0;
  voc.total += 1;
}

void EvalReport::merge(const EvalReport& o) {
  for (auto [mine, theirs] : {std::pair{&dec, &o.dec}, std::pair{&cha, &o.cha},
                              std::pair{&wor, &o.wor}, std::pair{&voc, &o.voc}}) {
    mine->correct += theirs->correct;
    mine->total += theirs->total;
  }
  skipped_tokens += o.skipped_tokens;
}

std::string EvalReport::to_json(const std::string& run_config_json) const {
  json run = json::parse(run_config_json, nullptr, false);
  if (run.is_discarded()) throw Error(ErrorCode::FormatError, "run config is not valid JSON");
  json j = {{"format", "divrit-eval-report"},
            {"version", kReportVersion},
            {"scheme", scheme},
            {"DEC", axis_json(dec)},
            {"CHA", axis_json(cha)},
            {"WOR", axis_json(wor)},
            {"VOC", axis_json(voc)},
            {"skipped_tokens", skipped_tokens},
            {"run_config", run}};
  return j.dump(2) + "\n";
}

std::string EvalReport::to_table() const {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-10s %7s %7s %7s %7s\n%-10s %7.2f %7.2f %7.2f %7.2f\n",
                "scheme", "DEC", "CHA", "WOR", "VOC", scheme.c_str(), dec.percent(),
                cha.percent(), wor.percent(), voc.percent());
  return buf;
}

EvalReport evaluate(std::span<const Sentence> gold, std::span<const Sentence> predicted,
                    const std::string& scheme, const VocTable& voc) {
  const auto gs = token_stream(gold);
  const auto ps = token_stream(predicted);
  if (gs.size() != ps.size())
    throw Error(ErrorCode::AlignmentError, "gold has " + std::to_string(gs.size()) +
                                               " tokens, predictions " + std::to_string(ps.size()));
  EvalReport report;
  report.scheme = scheme;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const auto gt = gs[i].sentence->token_text(gs[i].index);
    const auto pt = ps[i].sentence->token_text(ps[i].index);
    if (strip_marks(gt) != strip_marks(pt))
      throw Error(ErrorCode::AlignmentError,
                  "token " + std::to_string(i) + ": '" + unicode::encode_utf8(strip_marks(gt)) +
                      "' vs '" + unicode::encode_utf8(strip_marks(pt)) + "'");
    if (!gs[i].sentence->tokens[gs[i].index].is_hebrew_word) continue;
    DiacritizedWord g;
    try {
      g = parse_word(gt);
    } catch (const Error&) {
      ++report.skipped_tokens;
      continue;
    }
    std::optional<DiacritizedWord> p;
    try {
      p = parse_word(pt);
    } catch (const Error&) {
    }
    report.add(judge_word(g, p, voc));
  }
  return report;
}

std::optional<DiacritizedWord> majority_predict(const Lexicon& lexicon, std::u32string_view w) {
  const auto* patterns = lexicon.find(w);
  if (patterns == nullptr || patterns->empty()) return std::nullopt;
  return apply_pattern(w, patterns->front().pattern);
}

std::optional<DiacritizedWord> knn1_predict(const CandidateGenerator& generator,
                                            std::u32string_view w) {
  try {
    CandidateSet set = generator.generate(w, 1, 1);
    if (set.candidates.empty()) return std::nullopt;
    return std::move(set.candidates.front());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoNeighbors) return std::nullopt;
    throw;
  }
}

std::optional<DiacritizedWord> knn1_predict(const Lexicon& lexicon, std::u32string_view w) {
  return knn1_predict(CandidateGenerator(lexicon), w);
}

std::u32string insert_marks(std::u32string_view stripped_token, const DiacritizedWord& word) {
  std::u32string out;
  std::size_t next = 0;
  for (char32_t c : stripped_token) {
    if (!unicode::is_hebrew_letter(c)) {
      out.push_back(c);
      continue;
    }
    if (next >= word.size() || word.clusters[next].base != c)
      throw Error(ErrorCode::StripMismatch, "prediction letters differ from the token");
    out += to_text(DiacritizedWord{{word.clusters[next++]}});
  }
  if (next != word.size())
    throw Error(ErrorCode::StripMismatch, "prediction letters differ from the token");
  return out;
}

HarnessResult run_predictor(std::span<const Sentence> gold, const WordPredictor& predictor,
                            const std::string& scheme, const HarnessOptions& options) {
  struct SentenceResult {
    EvalReport report;
    Sentence prediction;
  };
  std::vector<SentenceResult> results(gold.size());

  const auto process = [&](std::size_t si) {
    const Sentence& s = gold[si];
    const auto tokens = stripped_tokens(s);
    SentenceResult& r = results[si];
    std::u32string text;
    std::size_t cursor = 0;
    for (std::size_t ti = 0; ti < s.tokens.size(); ++ti) {
      text += strip_marks(std::u32string_view(s.text).substr(cursor, s.tokens[ti].begin - cursor));
      cursor = s.tokens[ti].end;
      std::u32string out = tokens[ti];
      if (s.tokens[ti].is_hebrew_word) {
        std::optional<DiacritizedWord> g;
        try {
          g = parse_word(s.token_text(ti));
        } catch (const Error&) {
          ++r.report.skipped_tokens;
        }
        if (g) {
          std::optional<DiacritizedWord> p = predictor(tokens, ti, *g);
          r.report.add(judge_word(*g, p, options.voc));
          if (p) out = insert_marks(tokens[ti], *p);
        }
      }
      text += out;
    }
    text += strip_marks(std::u32string_view(s.text).substr(cursor));
    r.prediction = make_sentence(std::move(text));
  };

  const std::size_t threads =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(1, options.threads)), 1,
                              std::max<std::size_t>(1, gold.size()));
  if (threads == 1) {
    for (std::size_t i = 0; i < gold.size(); ++i) process(i);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < gold.size(); i += threads) process(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  HarnessResult out;
  out.report.scheme = scheme;
  out.predictions.reserve(gold.size());
  for (auto& r : results) {
    out.report.merge(r.report);
    out.predictions.push_back(std::move(r.prediction));
  }
  return out;
}

const char* to_string(Scheme s) { return s == Scheme::Oracle ? "oracle" : "knn"; }

Scheme parse_scheme(std::string_view s) {
  if (s == "oracle") return Scheme::Oracle;
  if (s == "knn") return Scheme::Knn;
  throw Error(ErrorCode::ConfigError, "unknown scheme '" + std::string(s) + "'");
}

HarnessResult run_scheme(Scheme scheme, const CandidateScorer& scorer,
                         const CandidateGenerator& generator, std::span<const Sentence> gold,
                         int k, int c, const HarnessOptions& options) {
  const WordPredictor predictor = [&](std::span<const std::u32string> tokens, std::size_t target,
                                      const DiacritizedWord& g) -> std::optional<DiacritizedWord> {
    const std::u32string query = strip(g);
    CandidateSet set;
    try {
      set = scheme == Scheme::Oracle ? generator.oracle(query, g, k, c)
                                     : generator.generate(query, k, c);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NoNeighbors) return std::nullopt;
      throw;
    }
    if (set.candidates.empty()) return std::nullopt;
    if (set.candidates.size() == 1) return set.candidates.front();
    const auto dist = scorer.score(tokens, target, set.candidates);
    return set.candidates[dist.argmax()];
  };
  return run_predictor(gold, predictor, to_string(scheme), options);
}

void write_corpus(std::ostream& out, std::span<const Sentence> sentences) {
  for (const Sentence& s : sentences) out << unicode::encode_utf8(s.text) << '\n';
}

}  // namespace divrit
