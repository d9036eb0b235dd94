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

// Acceptance checks. Prints one line per criterion:
//
//   [n] PASS|FAIL|NOT RUN  summary
//
// Criteria 1-3 need the diacritized corpus (<data>/train and <data>/test,
// files or directories). Exit status: 1 if anything failed, 77 if nothing
// failed but something could not run, 0 otherwise.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <future>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "divrit/candgen.hpp"
#include "divrit/corpus.hpp"
#include "divrit/evalkit.hpp"
#include "divrit/hash.hpp"
#include "divrit/model.hpp"
#include "divrit/niqqud.hpp"
#include "divrit/render.hpp"
#include "divrit/scorer.hpp"
#include "divrit/synthetic.hpp"
#include "divrit/train.hpp"
#include "divrit/unicode.hpp"

#ifndef DIVRIT_DEFAULT_DATA_DIR
#define DIVRIT_DEFAULT_DATA_DIR ""
#endif

namespace fs = std::filesystem;
using namespace divrit;

namespace {

enum class Status { Pass, Fail, NotRun };

struct Outcome {
  Status status = Status::Pass;
  std::string summary;
};

Outcome verdict(bool ok, std::string summary) {
  return {ok ? Status::Pass : Status::Fail, std::move(summary)};
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// --- Data-backed criteria ----------------------------------------------

struct DataSplit {
  std::vector<Sentence> train;
  std::vector<Sentence> test;
};

std::optional<DataSplit> load_split(const std::string& dir) {
  if (dir.empty()) return std::nullopt;
  const fs::path root(dir);
  if (!fs::exists(root / "train") || !fs::exists(root / "test")) return std::nullopt;
  auto load = [](const fs::path& p) {
    const std::vector<fs::path> in{p};
    return flatten(load_corpus(in));
  };
  return DataSplit{load(root / "train"), load(root / "test")};
}

Outcome check_table_row(const EvalReport& r, const std::array<double, 4>& expected) {
  const std::array<double, 4> got{r.dec.percent(), r.cha.percent(), r.wor.percent(),
                                  r.voc.percent()};
  const char* names[] = {"DEC", "CHA", "WOR", "VOC"};
  bool ok = true;
  std::string s;
  for (int i = 0; i < 4; ++i) {
    ok = ok && std::abs(got[i] - expected[i]) <= 1.0;
    s += std::string(names[i]) + " " + fmt("%.2f", got[i]) + " (ref " + fmt("%.2f", expected[i]) +
         ") ";
  }
  return verdict(ok, s + "tolerance 1.0pp");
}

Outcome criterion_majority(const DataSplit& d, const Lexicon& lex) {
  const auto r = run_predictor(
      d.test,
      [&](auto, auto, const DiacritizedWord& g) { return majority_predict(lex, strip(g)); },
      "majority", {4, VocTable::standard()});
  return check_table_row(r.report, {93.79, 90.01, 84.87, 86.19});
}

EvalReport knn1_report(const DataSplit& d, const CandidateGenerator& gen) {
  return run_predictor(
             d.test,
             [&](auto, auto, const DiacritizedWord& g) { return knn1_predict(gen, strip(g)); },
             "knn1", {4, VocTable::standard()})
      .report;
}

// Monotone with non-increasing increments, coverage(1) equal to the 1-NN
// word accuracy, largest marginal gain at c <= 4.
Outcome check_curve(const std::vector<double>& curve, const AxisCount& knn_wor,
                    bool require_shape) {
  bool monotone = true, diminishing = true;
  std::size_t best_gain_at = 2;
  double best_gain = -1.0;
  for (std::size_t c = 1; c < curve.size(); ++c) {
    const double gain = curve[c] - curve[c - 1];
    monotone = monotone && gain >= 0.0;
    if (c >= 2) diminishing = diminishing && gain <= curve[c - 1] - curve[c - 2] + 1e-12;
    if (gain > best_gain) {
      best_gain = gain;
      best_gain_at = c + 1;
    }
  }
  const double wor = knn_wor.total == 0 ? 0.0
                                        : static_cast<double>(knn_wor.correct) /
                                              static_cast<double>(knn_wor.total);
  const bool identity = std::abs(curve[0] - wor) <= 1e-12;
  std::ostringstream s;
  s << "coverage";
  for (double v : curve) s << ' ' << fmt("%.4f", v);
  s << "; monotone " << monotone << ", diminishing " << diminishing << ", cov(1) "
    << fmt("%.6f", curve[0]) << " vs 1-NN WOR " << fmt("%.6f", wor) << ", largest gain at c="
    << best_gain_at;
  const bool ok = monotone && identity && (!require_shape || (diminishing && best_gain_at <= 4));
  return verdict(ok, s.str());
}

// Synthetic stand-in for the structural half of criterion 3: a lexicon of
// random words and a test set of perturbed in- and out-of-vocabulary words.
Outcome synthetic_curve() {
  Rng rng(2026);
  RandomWordOptions opt;
  opt.min_letters = 2;
  opt.max_letters = 5;
  std::vector<DiacritizedWord> vocab;
  for (int i = 0; i < 800; ++i) vocab.push_back(random_word(rng, opt));
  LexiconBuilder b;
  for (const auto& w : vocab) {
    b.add(w, 1 + static_cast<std::int64_t>(rng.index(8)));
    const std::size_t variants = rng.index(6);
    for (std::size_t v = 0; v < variants; ++v)
      b.add(perturb_word(w, 0.3, rng), 1 + static_cast<std::int64_t>(rng.index(3)));
  }
  const Lexicon lex = b.build();
  const CandidateGenerator gen(lex);
  std::vector<Sentence> test;
  for (int i = 0; i < 400; ++i) {
    const DiacritizedWord w = rng.uniform() < 0.6 ? perturb_word(vocab[rng.index(vocab.size())],
                                                                 0.3, rng)
                                                  : random_word(rng, opt);
    test.push_back(make_sentence(to_text(w)));
  }
  const auto pairs = collect_test_pairs(test);
  const auto curve = coverage_curve(gen, pairs, 5, 8);
  DataSplit d;
  d.test = test;
  return check_curve(curve, knn1_report(d, gen).wor, false);
}

// --- Property criteria -------------------------------------------------

Outcome criterion_round_trips() {
  Rng rng(4);
  int failures = 0;
  LexiconBuilder builder;
  for (int i = 0; i < 10000; ++i) {
    const DiacritizedWord w = random_word(rng);
    const DiacritizationPattern p = extract_pattern(w);
    bool ok = apply_pattern(strip(w), p) == w;
    ok = ok && parse_word(to_text(w), {.strict = true}) == w;
    ok = ok && parse_word(std::string_view(to_utf8(w))) == w;
    ok = ok && unicode::decode_utf8(unicode::encode_utf8(to_text(w))) == to_text(w);
    ok = ok && pattern_from_string(pattern_to_string(p)) == p;
    failures += ok ? 0 : 1;
    builder.add(w, 1 + static_cast<std::int64_t>(rng.index(4)));
  }
  const Lexicon lex = builder.build();
  std::stringstream io;
  write_lexicon(io, lex);
  const bool lexicon_ok = read_lexicon(io) == lex;
  const Model m = Model::initialize({}, {}, 4);
  const bool checkpoint_ok = checkpoint_from_string(checkpoint_to_string(m)).checksum() ==
                             m.checksum();
  return verdict(failures == 0 && lexicon_ok && checkpoint_ok,
                 "10000 random words, " + std::to_string(failures) +
                     " word/pattern/utf-8 failures; lexicon file round trip " +
                     (lexicon_ok ? "exact" : "BROKEN") + "; checkpoint round trip " +
                     (checkpoint_ok ? "exact" : "BROKEN"));
}

// Compares a/b >= c/d without rounding.
bool ratio_ge(const AxisCount& x, const AxisCount& y) {
  return x.correct * y.total >= y.correct * x.total;
}

Outcome criterion_coarsening() {
  Rng rng(5);
  int dec_cha = 0, cha_wor = 0, voc_wor = 0;
  for (int pair = 0; pair < 1000; ++pair) {
    const int words = 5 + static_cast<int>(rng.index(200));
    const double rate = rng.uniform();
    std::u32string gold_text, pred_text;
    for (int i = 0; i < words; ++i) {
      const DiacritizedWord w = random_word(rng);
      gold_text += to_text(w) + U' ';
      pred_text += to_text(perturb_word(w, rate, rng)) + U' ';
    }
    const std::vector<Sentence> gold{make_sentence(gold_text)};
    const std::vector<Sentence> pred{make_sentence(pred_text)};
    const EvalReport r = evaluate(gold, pred);
    dec_cha += ratio_ge(r.dec, r.cha) ? 0 : 1;
    cha_wor += ratio_ge(r.cha, r.wor) ? 0 : 1;
    voc_wor += ratio_ge(r.voc, r.wor) ? 0 : 1;
  }
  return verdict(dec_cha + cha_wor + voc_wor == 0,
                 "1000 random corpus pairs (5-204 words, per-pair error rate U(0,1)); violations "
                 "DEC<CHA " + std::to_string(dec_cha) + ", CHA<WOR " +
                     std::to_string(cha_wor) + ", VOC<WOR " + std::to_string(voc_wor));
}

EncoderConfig small_config(AuxMode aux, int hidden = 6) {
  EncoderConfig c;
  c.hidden = hidden;
  c.embed = hidden - 1;
  c.ngram_buckets = 64;
  c.aux = aux;
  return c;
}

ModelParams<double> random_params(const EncoderConfig& config, Rng& rng, double scale) {
  ModelParams<double> p = ModelParams<double>::zeros(config);
  for_each_tensor(p, [&](std::string_view, auto& t) {
    for (Eigen::Index c = 0; c < t.cols(); ++c)
      for (Eigen::Index r = 0; r < t.rows(); ++r) t(r, c) = rng.uniform(-scale, scale);
  });
  return p;
}

ScoringExample<double> random_example(const EncoderConfig& config, Rng& rng, std::size_t n) {
  ScoringExample<double> ex;
  const std::vector<std::u32string> tokens{strip(random_word(rng)), strip(random_word(rng)),
                                           strip(random_word(rng))};
  ex.context = context_features(tokens, 1, config);
  for (std::size_t i = 0; i < n; ++i) {
    const DiacritizedWord w = random_word(rng);
    ex.candidate_patches.push_back(render_word(w).patches.cast<double>());
    ex.candidate_patterns.push_back(extract_pattern(w));
  }
  ex.gold = rng.index(n);
  return ex;
}

Outcome criterion_unit_values() {
  Rng rng(6);
  double worst_ce = 0.0, worst_aux = 0.0;
  for (int n = 1; n <= 8; ++n) {
    // Zero weights, and random weights with identical candidates.
    const EncoderConfig config = small_config(AuxMode::None);
    ScoringExample<double> ex = random_example(config, rng, static_cast<std::size_t>(n));
    const double ln_n = std::log(static_cast<double>(n));
    worst_ce = std::max(worst_ce, std::abs(loss_and_gradient(ModelParams<double>::zeros(config),
                                                             config, ex)
                                               .total -
                                           ln_n));
    std::fill(ex.candidate_patches.begin(), ex.candidate_patches.end(), ex.candidate_patches[0]);
    worst_ce = std::max(
        worst_ce,
        std::abs(loss_and_gradient(random_params(config, rng, 0.5), config, ex).total - ln_n));
  }
  // ln 2 + 0.5 * mean over candidates of the mean-over-M BCE, each ln 2.
  const double expected = 1.5 * std::log(2.0);
  for (AuxMode mode : {AuxMode::Bag, AuxMode::Positional}) {
    const EncoderConfig config = small_config(mode);
    const ScoringExample<double> ex = random_example(config, rng, 2);
    worst_aux = std::max(
        worst_aux,
        std::abs(loss_and_gradient(ModelParams<double>::zeros(config), config, ex).total -
                 expected));
  }
  return verdict(worst_ce <= 1e-9 && worst_aux <= 1e-9,
                 "uniform-score loss vs ln N (N=1..8): max error " + fmt("%.2e", worst_ce) +
                     "; aux example ln2 + 0.5 ln2 = " + fmt("%.6f", expected) +
                     " (bag and positional): max error " + fmt("%.2e", worst_aux));
}

Outcome criterion_grad_check() {
  Rng rng(7);
  double worst = 0.0;
  std::string worst_group;
  const AuxMode modes[] = {AuxMode::None, AuxMode::Bag, AuxMode::Positional};
  for (int i = 0; i < 100; ++i) {
    EncoderConfig config = small_config(modes[i % 3], 4 + static_cast<int>(rng.index(4)));
    config.activation = i % 5 == 4 ? Activation::Identity : Activation::Tanh;
    const auto params = random_params(config, rng, 0.5);
    const auto ex = random_example(config, rng, 2 + rng.index(3));
    const GradCheckReport r = grad_check(params, config, ex, 1e-5);
    for (const auto& g : r.groups)
      if (g.error > worst) {
        worst = g.error;
        worst_group = g.name;
      }
  }
  return verdict(worst <= 1e-4, "100 random models/examples (all aux modes): max relative error " +
                                    fmt("%.2e", worst) + " in " + worst_group);
}

Outcome criterion_scoring() {
  Rng rng(8);
  double worst_norm = 0.0;
  int perm_fail = 0, scale_fail = 0;
  for (int i = 0; i < 1000; ++i) {
    const EncoderConfig config = small_config(AuxMode::None, 5 + static_cast<int>(rng.index(8)));
    const auto params = random_params(config, rng, 1.0);
    const std::size_t n = 1 + rng.index(8);
    const auto ex = random_example(config, rng, n);
    const VectorX<double> u = encode_context(ex.context, params.context);
    std::vector<VectorX<double>> e;
    for (const auto& p : ex.candidate_patches)
      e.push_back(encode_candidate(p, params.candidate, config.activation));
    const auto d = score<double>(u, e);
    worst_norm = std::max(worst_norm, std::abs(d.probabilities.sum() - 1.0));

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t j = n; j > 1; --j) std::swap(perm[j - 1], perm[rng.index(j)]);
    std::vector<VectorX<double>> shuffled;
    for (std::size_t j : perm) shuffled.push_back(e[j]);
    const auto dp = score<double>(u, shuffled);
    for (std::size_t j = 0; j < n; ++j) {
      const auto a = static_cast<Eigen::Index>(j), b = static_cast<Eigen::Index>(perm[j]);
      if (dp.logits(a) != d.logits(b) ||
          std::abs(dp.probabilities(a) - d.probabilities(b)) > 1e-15) {
        ++perm_fail;
        break;
      }
    }
    const double alpha = std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
    const VectorX<double> scaled = alpha * u;
    if (score<double>(scaled, e).argmax() != d.argmax()) ++scale_fail;
  }
  return verdict(worst_norm <= 1e-9 && perm_fail == 0 && scale_fail == 0,
                 "1000 random instances: max |sum p - 1| " + fmt("%.2e", worst_norm) +
                     ", permutation failures " + std::to_string(perm_fail) +
                     ", argmax changes under scaling " + std::to_string(scale_fail));
}

Outcome criterion_render(const std::optional<DataSplit>& data) {
  std::vector<DiacritizedWord> words;
  std::string source;
  if (data) {
    std::set<std::u32string> seen;
    for (const TestPair& p : collect_test_pairs(data->test)) {
      if (words.size() == 1000) break;
      if (seen.insert(to_text(p.gold)).second) words.push_back(p.gold);
    }
    source = "corpus words";
  }
  if (words.size() < 1000) {
    Rng rng(9);
    while (words.size() < 1000) words.push_back(random_word(rng));
    source = data ? "corpus and random words" : "random words (no corpus)";
  }
  int dims = 0, mirror = 0, rerender = 0;
  for (const DiacritizedWord& w : words) {
    const RenderedImage a = render_word(w);
    const RenderedImage s = render_text(strip(w));
    if (a.height() != s.height() || a.width() != s.width() ||
        a.patches.cols() != s.patches.cols())
      ++dims;
    const RenderedImage back = mirror_rtl(mirror_rtl(a));
    if (back.pixels != a.pixels || back.patches != a.patches) ++mirror;
    std::ostringstream p1, p2;
    write_pgm(p1, a.pixels);
    write_pgm(p2, render_word(w).pixels);
    if (p1.str() != p2.str()) ++rerender;
  }
  return verdict(dims + mirror + rerender == 0,
                 std::to_string(words.size()) + " " + source + ": dimension mismatches " +
                     std::to_string(dims) + ", mirror involution failures " +
                     std::to_string(mirror) + ", re-render differences " +
                     std::to_string(rerender));
}

std::vector<LabeledExample> target_examples(const CueCorpus& train_set, const CueCorpus& held) {
  const Lexicon lex = build_lexicon(train_set.sentences);
  const CandidateGenerator gen(lex);
  std::vector<LabeledExample> out;
  for (auto& ex : build_examples(held.sentences, gen, 5, 2))
    if (ex.target == 2) out.push_back(std::move(ex));
  return out;
}

Outcome criterion_learning() {
  CueCorpusOptions o;
  const CueCorpus train_set = make_cue_corpus(o, 1, 7);
  o.sentences = 400;
  o.alternate_classes = true;
  const CueCorpus held = make_cue_corpus(o, 1, 8);
  const auto examples = target_examples(train_set, held);

  TrainConfig tc;
  tc.steps = 5000;
  const Model init = Model::initialize({}, {}, 1);
  auto run = [&](bool shuffle) {
    TrainConfig c = tc;
    c.shuffle_labels = shuffle;
    return oracle_accuracy(train(train_set.sentences, init, c).model, examples);
  };
  auto real = std::async(std::launch::async, run, false);
  auto shuffled = std::async(std::launch::async, run, true);
  const double acc = real.get(), shuffled_acc = shuffled.get();
  return verdict(acc >= 0.95 && shuffled_acc <= 0.55,
                 std::to_string(examples.size()) + " held-out two-candidate target words, " +
                     std::to_string(tc.steps) + " steps: accuracy " + fmt("%.4f", acc) +
                     " (>= 0.95), shuffled labels " + fmt("%.4f", shuffled_acc) + " (<= 0.55)");
}

Outcome criterion_ablations() {
  CueCorpusOptions o;
  o.sentences = 600;
  o.majority_share = 0.8;
  const CueCorpus train_set = make_cue_corpus(o, 2, 3);
  o.sentences = 100;
  o.alternate_classes = true;
  const CueCorpus held = make_cue_corpus(o, 2, 4);
  const Lexicon lex = build_lexicon(train_set.sentences);
  const CandidateGenerator gen(lex);

  struct Variant {
    std::string name;
    AuxMode aux = AuxMode::None;
    bool mirror = false;
    bool balanced = false;
  };
  const std::vector<Variant> variants{{"baseline"},
                                      {"bag aux", AuxMode::Bag},
                                      {"positional aux", AuxMode::Positional},
                                      {"mirror", AuxMode::None, true},
                                      {"balanced", AuxMode::None, false, true}};
  struct Run {
    std::vector<double> losses;
    double held_out_wor = 0.0;
  };
  auto run = [&](const Variant& v) {
    EncoderConfig ec;
    ec.hidden = 16;
    ec.embed = 16;
    ec.ngram_buckets = 512;
    ec.aux = v.aux;
    RenderConfig rc;
    rc.mirror = v.mirror;
    TrainConfig tc;
    tc.steps = 60;
    tc.balanced = v.balanced;
    const TrainResult r = train(train_set.sentences, Model::initialize(ec, rc, 1), tc);
    Run out;
    for (const TraceRow& row : r.trace) out.losses.push_back(row.loss);
    const ReferenceScorer scorer(r.model);
    out.held_out_wor = run_scheme(Scheme::Oracle, scorer, gen, held.sentences, 5, 2).report.wor
                           .percent();
    return out;
  };
  std::vector<std::future<Run>> futures;
  for (const Variant& v : variants) futures.push_back(std::async(std::launch::async, run, v));
  std::vector<Run> runs;
  for (auto& f : futures) runs.push_back(f.get());

  bool ok = true;
  std::ostringstream s;
  s << "imbalanced cue corpus (0.8), 60 steps, end-to-end oracle eval;";
  for (std::size_t i = 1; i < runs.size(); ++i) {
    const bool distinct = runs[i].losses != runs[0].losses;
    ok = ok && distinct;
    s << ' ' << variants[i].name << (distinct ? " distinct" : " IDENTICAL") << " (WOR "
      << fmt("%.1f", runs[i].held_out_wor) << ")";
  }
  std::set<std::vector<double>> unique;
  for (const Run& r : runs) unique.insert(r.losses);
  ok = ok && unique.size() == runs.size();
  s << "; baseline WOR " << fmt("%.1f", runs[0].held_out_wor) << "; " << unique.size()
    << " distinct traces of " << runs.size();
  return verdict(ok, s.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("divrit acceptance checks");
  std::string data_dir = DIVRIT_DEFAULT_DATA_DIR;
  std::vector<int> only;
  app.add_option("--data", data_dir, "directory with train/ and test/ corpora");
  app.add_option("--only", only, "criteria to run (default: all)")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  auto wanted = [&](int n) {
    return only.empty() || std::find(only.begin(), only.end(), n) != only.end();
  };
  bool failed = false, skipped = false;
  auto report = [&](int n, const std::function<Outcome()>& check) {
    if (!wanted(n)) return;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {Status::Fail, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const char* label = o.status == Status::Pass ? "PASS" : o.status == Status::Fail ? "FAIL"
                                                                                      : "NOT RUN";
    failed = failed || o.status == Status::Fail;
    skipped = skipped || o.status == Status::NotRun;
    std::printf("[%d] %-7s %s (%.1fs)\n", n, label, o.summary.c_str(), secs);
    std::fflush(stdout);
  };

  std::optional<DataSplit> data;
  if (wanted(1) || wanted(2) || wanted(3) || wanted(9)) data = load_split(data_dir);
  std::optional<Lexicon> lexicon;
  if (data) lexicon = build_lexicon(data->train);
  const std::string no_data =
      data_dir.empty() ? "no corpus configured (--data or DIVRIT_DATA_DIR)"
                       : "corpus not found under " + data_dir + " (expects train/ and test/)";

  report(1, [&]() -> Outcome {
    if (!data) return {Status::NotRun, no_data};
    return criterion_majority(*data, *lexicon);
  });
  report(2, [&]() -> Outcome {
    if (!data) return {Status::NotRun, no_data};
    const CandidateGenerator gen(*lexicon);
    return check_table_row(knn1_report(*data, gen), {96.20, 94.09, 87.09, 87.39});
  });
  report(3, [&]() -> Outcome {
    if (!data) {
      const Outcome synthetic = synthetic_curve();
      if (synthetic.status == Status::Fail) return synthetic;
      return {Status::NotRun, no_data + "; synthetic structural checks passed: " +
                                  synthetic.summary};
    }
    const CandidateGenerator gen(*lexicon);
    const auto pairs = collect_test_pairs(data->test);
    return check_curve(coverage_curve(gen, pairs, 5, 8), knn1_report(*data, gen).wor, true);
  });
  report(4, criterion_round_trips);
  report(5, criterion_coarsening);
  report(6, criterion_unit_values);
  report(7, criterion_grad_check);
  report(8, criterion_scoring);
  report(9, [&] { return criterion_render(data); });
  report(10, criterion_learning);
  report(11, criterion_ablations);
  return failed ? 1 : skipped ? 77 : 0;
}
