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

#include <sstream>

#include <json.hpp>

#include "divrit/synthetic.hpp"
#include "support.hpp"

using namespace divrit;
using namespace divrit::testing;

namespace {

Lexicon melekh_lexicon() {
  const std::vector<Sentence> corpus{make_sentence(kMelekh + U" " + kMelekh + U" " + kMalakh)};
  return build_lexicon(corpus);
}

// Picks a fixed candidate index regardless of the scores' content.
class FixedScorer final : public CandidateScorer {
 public:
  explicit FixedScorer(std::size_t pick) : pick_(pick) {}
  ScoreDistribution<double> score(std::span<const std::u32string>, std::size_t,
                                  std::span<const DiacritizedWord> c) const override {
    ScoreDistribution<double> d;
    d.logits = VectorX<double>::Zero(static_cast<Eigen::Index>(c.size()));
    d.logits(static_cast<Eigen::Index>(std::min(pick_, c.size() - 1))) = 1.0;
    d.probabilities = softmax(d.logits);
    return d;
  }

 private:
  std::size_t pick_;
};

}  // namespace

TEST_SUITE("evalkit") {

TEST_CASE("identical words are fully correct") {
  const auto j = judge_word(parse_word(kMelekh), parse_word(kMelekh));
  CHECK(j.decisions_total == 6);
  CHECK(j.decisions_correct == 6);
  CHECK(j.chars_total == 3);
  CHECK(j.chars_correct == 3);
  CHECK(j.word_correct);
  CHECK(j.voc_correct);
}

TEST_CASE("melekh against malakh") {
  const auto j = judge_word(parse_word(kMelekh), parse_word(kMalakh));
  CHECK(j.decisions_correct == 4);
  CHECK(j.decisions_total == 6);
  CHECK(j.chars_correct == 1);
  CHECK(j.chars_total == 3);
  CHECK_FALSE(j.word_correct);
  CHECK_FALSE(j.voc_correct);
}

TEST_CASE("patah for qamats is a vocalization match") {
  const auto gold = parse_word(std::u32string_view(U"\u05DE\u05B7\u05DC\u05B0\u05DB\u05B8\u05BC\u05D4"));
  const auto pred = parse_word(std::u32string_view(U"\u05DE\u05B8\u05DC\u05B0\u05DB\u05B8\u05BC\u05D4"));
  const auto j = judge_word(gold, pred);
  CHECK_FALSE(j.word_correct);
  CHECK(j.voc_correct);
  // A dagesh error is never forgiven by VOC.
  const auto no_dagesh = parse_word(std::u32string_view(U"\u05DE\u05B7\u05DC\u05B0\u05DB\u05B8\u05D4"));
  CHECK_FALSE(judge_word(gold, no_dagesh).voc_correct);
}

TEST_CASE("shin carries a third decision") {
  const auto shin = parse_word(std::u32string_view(U"\u05E9\u05B8\u05C1"));
  const auto sin = parse_word(std::u32string_view(U"\u05E9\u05B8\u05C2"));
  const auto j = judge_word(shin, sin);
  CHECK(j.decisions_total == 3);
  CHECK(j.decisions_correct == 2);
  CHECK_FALSE(j.voc_correct);
}

TEST_CASE("absent predictions and mismatched letters") {
  const auto j = judge_word(parse_word(kMelekh), std::nullopt);
  CHECK(j.decisions_total == 6);
  CHECK(j.decisions_correct == 0);
  CHECK(j.chars_correct == 0);
  CHECK_FALSE(j.voc_correct);
  CHECK_THROWS_CODE(judge_word(parse_word(kMelekh), parse_word(std::u32string_view(U"\u05DE\u05DC\u05D0"))),
                    ErrorCode::StripMismatch);
}

TEST_CASE("the VOC table can be replaced") {
  const VocTable strict = VocTable::from_json(R"({"A": ["05B7"], "A2": ["05B8"]})");
  const auto gold = parse_word(std::u32string_view(U"\u05DE\u05B7"));
  const auto pred = parse_word(std::u32string_view(U"\u05DE\u05B8"));
  CHECK(judge_word(gold, pred).voc_correct);
  CHECK_FALSE(judge_word(gold, pred, strict).voc_correct);
  CHECK_THROWS_CODE(VocTable::from_json(R"({"A": ["05BC"]})"), ErrorCode::ConfigError);
  CHECK_THROWS_CODE(VocTable::from_json(R"({"A": ["05B7"], "B": ["05B7"]})"),
                    ErrorCode::ConfigError);
}

TEST_CASE("evaluate over aligned corpora") {
  const std::vector<Sentence> gold{make_sentence(kMelekh + U" abc " + kMalakh + U".")};
  const EvalReport same = evaluate(gold, gold);
  CHECK(same.wor.percent() == 100.0);
  CHECK(same.dec.percent() == 100.0);
  CHECK(same.cha.percent() == 100.0);
  CHECK(same.voc.percent() == 100.0);
  CHECK(same.wor.total == 2);

  const std::vector<Sentence> bare{make_sentence(kMlk + U" abc " + kMlk + U".")};
  const EvalReport none = evaluate(gold, bare);
  CHECK(none.wor.percent() == 0.0);
  CHECK(none.dec.correct == 6);  // dagesh slots match: no dagesh anywhere

  const std::vector<Sentence> shorter{make_sentence(kMlk + U" abc")};
  CHECK_THROWS_CODE(evaluate(gold, shorter), ErrorCode::AlignmentError);
  const std::vector<Sentence> other{make_sentence(kMlk + U" abd " + kMlk + U".")};
  CHECK_THROWS_CODE(evaluate(gold, other), ErrorCode::AlignmentError);
}

TEST_CASE("all-absent predictions score zero everywhere") {
  const std::vector<Sentence> gold{make_sentence(kMelekh + U" " + kMalakh)};
  const auto r = run_predictor(
      gold, [](auto, auto, const auto&) { return std::optional<DiacritizedWord>{}; }, "none");
  CHECK(r.report.dec.percent() == 0.0);
  CHECK(r.report.cha.percent() == 0.0);
  CHECK(r.report.wor.percent() == 0.0);
  CHECK(r.report.voc.percent() == 0.0);
}

TEST_CASE("baselines") {
  const Lexicon lex = melekh_lexicon();
  CHECK(majority_predict(lex, kMlk) == parse_word(kMelekh));
  CHECK_FALSE(majority_predict(lex, U"\u05D0\u05D1\u05D2").has_value());
  CHECK(knn1_predict(lex, kMlk) == majority_predict(lex, kMlk));
  // OOV with a same-length neighbor takes the neighbor's top pattern.
  CHECK(knn1_predict(lex, U"\u05DE\u05DC\u05D0") == apply_pattern(U"\u05DE\u05DC\u05D0", extract_pattern(parse_word(kMelekh))));
  CHECK_FALSE(knn1_predict(lex, U"\u05DE\u05DC").has_value());
}

TEST_CASE("majority and 1-NN agree on every in-vocabulary word") {
  Rng rng(31);
  LexiconBuilder b;
  RandomWordOptions opt;
  opt.max_letters = 4;
  std::vector<DiacritizedWord> words;
  for (int i = 0; i < 500; ++i) {
    words.push_back(random_word(rng, opt));
    b.add(words.back(), 1 + static_cast<std::int64_t>(rng.index(3)));
  }
  const Lexicon lex = b.build();
  const CandidateGenerator gen(lex);
  for (const auto& [form, _] : lex.entries())
    CHECK(knn1_predict(gen, form) == majority_predict(lex, form));
}

TEST_CASE("prediction output keeps punctuation and reinserts marks") {
  CHECK(insert_marks(U"\u05D2\u05F3\u05D9", parse_word(std::u32string_view(U"\u05D2\u05B4\u05BC\u05F3\u05D9"))) ==
        U"\u05D2\u05B4\u05BC\u05F3\u05D9");
  CHECK_THROWS_CODE(insert_marks(U"\u05D2\u05D9", parse_word(kMelekh)), ErrorCode::StripMismatch);

  const Lexicon lex = melekh_lexicon();
  const std::vector<Sentence> gold{make_sentence(U"(" + kMalakh + U") abc.")};
  const auto r = run_predictor(
      gold, [&](auto, auto, const DiacritizedWord& g) { return majority_predict(lex, strip(g)); },
      "majority");
  REQUIRE(r.predictions.size() == 1);
  CHECK(r.predictions[0].text == U"(" + kMelekh + U") abc.");
  CHECK(evaluate(gold, r.predictions) .wor == r.report.wor);
}

TEST_CASE("schemes") {
  const Lexicon lex = melekh_lexicon();
  const CandidateGenerator gen(lex);
  const std::vector<Sentence> gold{make_sentence(kMelekh + U" " + kMalakh + U"."),
                                   make_sentence(kMalakh + U".")};
  // c = 1 under the oracle leaves only the gold form.
  const auto oracle1 = run_scheme(Scheme::Oracle, FixedScorer(0), gen, gold, 5, 1);
  CHECK(oracle1.report.wor.percent() == 100.0);
  CHECK(oracle1.report.scheme == "oracle");
  // Always picking the first KNN candidate reproduces the 1-NN baseline.
  const auto knn = run_scheme(Scheme::Knn, FixedScorer(0), gen, gold, 5, 2);
  CHECK(knn.report.wor.correct == 1);
  const auto second = run_scheme(Scheme::Knn, FixedScorer(1), gen, gold, 5, 2);
  CHECK(second.report.wor.correct == 2);
  // Thread count does not change the result.
  HarnessOptions four;
  four.threads = 4;
  CHECK(run_scheme(Scheme::Knn, FixedScorer(1), gen, gold, 5, 2, four).report == second.report);
}

TEST_CASE("KNN scheme accuracy never exceeds coverage") {
  Rng rng(41);
  CueCorpusOptions o;
  o.sentences = 200;
  const CueCorpus corpus = make_cue_corpus(o, 3, 4);
  const Lexicon lex = build_lexicon(std::span(corpus.sentences).first(150));
  const CandidateGenerator gen(lex);
  const auto test = std::span(corpus.sentences).subspan(150);
  const auto pairs = collect_test_pairs(test);
  for (int c = 1; c <= 3; ++c)
    for (std::size_t pick : {0u, 1u}) {
      const auto r = run_scheme(Scheme::Knn, FixedScorer(pick), gen, test, 5, c);
      CHECK(r.report.wor.percent() <= 100.0 * coverage(gen, pairs, 5, c) + 1e-9);
    }
}

// Micro-averaging weighs letters and decisions unequally across words, so
// the per-word orderings DEC >= CHA >= WOR need not survive aggregation.
TEST_CASE("micro-averaged orderings can invert") {
  SUBCASE("DEC below CHA") {
    // A shin with all three slots wrong next to a correct plain letter.
    const std::vector<Sentence> gold{make_sentence(std::u32string(U"\u05E9\u05B8\u05C1 \u05D1\u05B7"))};
    const std::vector<Sentence> pred{make_sentence(std::u32string(U"\u05E9\u05B4\u05BC\u05C2 \u05D1\u05B7"))};
    const EvalReport r = evaluate(gold, pred);
    CHECK(r.dec.percent() == doctest::Approx(40.0));
    CHECK(r.cha.percent() == doctest::Approx(50.0));
  }
  SUBCASE("CHA below WOR") {
    const std::vector<Sentence> gold{make_sentence(std::u32string(U"\u05D1\u05B7 \u05D2\u05B7\u05D3\u05B7\u05D4\u05B7\u05D5\u05B7"))};
    const std::vector<Sentence> pred{make_sentence(std::u32string(U"\u05D1\u05B7 \u05D2\u05B4\u05D3\u05B4\u05D4\u05B4\u05D5\u05B4"))};
    const EvalReport r = evaluate(gold, pred);
    CHECK(r.cha.percent() == doctest::Approx(20.0));
    CHECK(r.wor.percent() == doctest::Approx(50.0));
  }
}

TEST_CASE("report serialization") {
  EvalReport r;
  r.scheme = "majority";
  r.dec = {9379, 10000};
  r.cha = {9001, 10000};
  r.wor = {8487, 10000};
  r.voc = {8619, 10000};
  const auto j = nlohmann::json::parse(r.to_json(R"({"seed": 1})"));
  CHECK(j["WOR"]["percent"].get<double>() == doctest::Approx(84.87));
  CHECK(j["run_config"]["seed"] == 1);
  CHECK(j["version"] == kReportVersion);
  const std::string table = r.to_table();
  CHECK(table.find("DEC     CHA     WOR     VOC") != std::string::npos);
  CHECK(table.find("93.79   90.01   84.87   86.19") != std::string::npos);
}

}  // TEST_SUITE
