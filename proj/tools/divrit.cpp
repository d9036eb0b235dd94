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

// divrit: command-line front end.
//
// Exit status: 0 success, 1 usage error, 2 data error, 3 internal failure.
// Every artifact records the run configuration and a content hash of its
// inputs, either inline (JSON outputs) or in a "<output>.meta.json" sidecar
// (lexicon, CSV, PGM, text). Wall-clock time goes only into
// "<output>.time.json" so the artifacts themselves are reproducible.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "divrit/candgen.hpp"
#include "divrit/corpus.hpp"
#include "divrit/evalkit.hpp"
#include "divrit/hash.hpp"
#include "divrit/model.hpp"
#include "divrit/render.hpp"
#include "divrit/train.hpp"
#include "divrit/unicode.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace divrit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Options of the selected subcommand, as given or defaulted.
json run_config(const CLI::App& sub) {
  json options = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string& name = opt->get_single_name();
    if (name == "help" || name == "config") continue;
    if (opt->get_expected_max() == 0)
      options[name] = opt->count() > 0;
    else if (opt->get_expected_max() > 1)
      options[name] = opt->results();
    else
      options[name] = opt->count() > 0 ? opt->results().front() : opt->get_default_str();
  }
  return {{"subcommand", sub.get_name()}, {"options", options}};
}

// FNV-1a over path names and bytes, in the order given.
std::string hash_inputs(const std::vector<fs::path>& files) {
  Fnv1a64 h;
  for (const fs::path& p : files) {
    h.update(p.filename().string());
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + p.string());
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0)
      h.update(buf, static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

std::vector<fs::path> corpus_files(const std::vector<std::string>& inputs) {
  std::vector<fs::path> paths(inputs.begin(), inputs.end());
  return expand_corpus_paths(paths);
}

std::vector<Sentence> load_sentences(const std::vector<fs::path>& files) {
  return flatten(load_corpus(files));
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

fs::path sidecar(const fs::path& output, const char* suffix) {
  return fs::path(output.string() + suffix);
}

void write_sidecars(const fs::path& output, const json& config, const std::string& input_hash,
                    bool meta = true) {
  if (meta)
    write_text(sidecar(output, ".meta.json"),
               json{{"run_config", config}, {"input_hash", input_hash}}.dump(2) + "\n");
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  write_text(sidecar(output, ".time.json"), json{{"written_at", stamp}}.dump() + "\n");
}

std::string with_hash(const json& config, const std::string& input_hash) {
  json j = config;
  j["input_hash"] = input_hash;
  return j.dump();
}

// "5", "1..8" or "1,2,5".
std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  try {
    if (const auto dots = text.find(".."); dots != std::string::npos) {
      const int lo = std::stoi(text.substr(0, dots));
      const int hi = std::stoi(text.substr(dots + 2));
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    }
  } catch (const std::exception&) {
    throw UsageError(std::string("bad ") + what + " list '" + text + "'");
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what + " list");
  for (int v : out)
    if (v < 1) throw UsageError(std::string(what) + " values must be positive");
  return out;
}

struct Options {
  // shared
  std::vector<std::string> corpus;
  std::vector<std::string> test;
  std::string lexicon;
  std::string output;
  std::string predictions;
  int k = kDefaultNeighbors;
  int c = kDefaultCandidates;
  int threads = 1;
  std::uint64_t seed = 1;
  std::string voc_table;
  // build-lexicon
  bool strict = false;
  // candidates
  std::vector<std::string> words;
  bool oracle = false;
  // coverage
  std::string k_list = "5";
  std::string c_list = "1..8";
  // render
  std::string text;
  bool word_mode = false;
  bool mirror = false;
  // train
  std::string trace;
  int steps = 5000;
  int batch = 32;
  double lr = 0.05;
  double momentum = 0.9;
  std::string aux = "none";
  std::string activation = "tanh";
  bool balanced = false;
  bool shuffle_labels = false;
  int hidden = 64;
  int embed = 64;
  int buckets = 4096;
  int window = 2;
  // evaluate
  std::string checkpoint;
  std::string scheme = "oracle";
  std::string predicted;
  // baseline
  std::string baseline;
};

VocTable voc_from(const Options& o) {
  if (o.voc_table.empty()) return VocTable::standard();
  std::ifstream in(o.voc_table);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + o.voc_table);
  std::stringstream buf;
  buf << in.rdbuf();
  return VocTable::from_json(buf.str());
}

void emit_report(const EvalReport& report, const Options& o, const json& config,
                 const std::string& input_hash) {
  std::cout << report.to_table();
  if (!o.output.empty()) {
    write_text(o.output, report.to_json(with_hash(config, input_hash)));
    write_text(sidecar(o.output, ".txt"), report.to_table());
    write_sidecars(o.output, config, input_hash, false);
  }
}

void emit_predictions(const std::vector<Sentence>& sentences, const Options& o,
                      const json& config, const std::string& input_hash) {
  if (o.predictions.empty()) return;
  std::ofstream out(o.predictions, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + o.predictions);
  write_corpus(out, sentences);
  write_sidecars(o.predictions, config, input_hash);
}

int cmd_build_lexicon(const Options& o, const json& config) {
  const auto files = corpus_files(o.corpus);
  LexiconBuilder builder;
  BuildStats total;
  for (const fs::path& f : files) {
    const auto docs = load_corpus(std::vector<fs::path>{f});
    const auto sentences = flatten(docs);
    BuildStats stats;
    const Lexicon part = build_lexicon(sentences, BuildOptions{o.strict, f.string()}, &stats);
    for (const auto& [form, patterns] : part.entries())
      for (const auto& pc : patterns) builder.add(apply_pattern(form, pc.pattern), pc.count);
    total.hebrew_tokens += stats.hebrew_tokens;
    total.parsed_tokens += stats.parsed_tokens;
    total.skipped_tokens += stats.skipped_tokens;
  }
  const Lexicon lexicon = builder.build();
  save_lexicon(o.output, lexicon);
  const std::string hash = hash_inputs(files);
  json meta = {{"run_config", config},
               {"input_hash", hash},
               {"entries", lexicon.size()},
               {"total_tokens", lexicon.total_tokens()},
               {"hebrew_tokens", total.hebrew_tokens},
               {"skipped_tokens", total.skipped_tokens}};
  write_text(sidecar(o.output, ".meta.json"), meta.dump(2) + "\n");
  write_sidecars(o.output, config, hash, false);
  std::cerr << "lexicon: " << lexicon.size() << " forms, " << lexicon.total_tokens()
            << " tokens, " << total.skipped_tokens << " unparsable tokens skipped\n";
  return kExitOk;
}

int cmd_candidates(const Options& o, const json& config) {
  const Lexicon lexicon = load_lexicon(o.lexicon);
  const CandidateGenerator generator(lexicon);
  std::ostringstream out;
  for (const std::string& raw : o.words) {
    CandidateSet set;
    std::u32string query;
    try {
      if (o.oracle) {
        const DiacritizedWord gold = parse_word(std::string_view(raw));
        query = strip(gold);
        set = generator.oracle(query, gold, o.k, o.c);
      } else {
        query = letters_of(strip_marks(unicode::decode_utf8(raw)));
        set = generator.generate(query, o.k, o.c);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoNeighbors) throw;
      out << unicode::encode_utf8(query) << "\t-\t(no neighbors)\n";
      continue;
    }
    for (std::size_t i = 0; i < set.candidates.size(); ++i) {
      out << unicode::encode_utf8(set.query) << '\t' << i << '\t'
          << to_utf8(set.candidates[i]) << '\t'
          << pattern_to_string(extract_pattern(set.candidates[i]));
      if (set.gold_index && *set.gold_index == i) out << "\tgold";
      out << '\n';
    }
  }
  if (o.output.empty()) {
    std::cout << out.str();
  } else {
    write_text(o.output, out.str());
    write_sidecars(o.output, config, hash_inputs({fs::path(o.lexicon)}));
  }
  return kExitOk;
}

int cmd_coverage(const Options& o, const json& config) {
  const auto ks = parse_int_list(o.k_list, "k");
  const auto cs = parse_int_list(o.c_list, "c");
  const Lexicon lexicon = load_lexicon(o.lexicon);
  const CandidateGenerator generator(lexicon);
  auto files = corpus_files(o.test);
  const auto pairs = collect_test_pairs(load_sentences(files));
  const int max_c = *std::max_element(cs.begin(), cs.end());
  std::ostringstream out;
  out << "k,c,coverage\n";
  for (int k : ks) {
    const auto curve = coverage_curve(generator, pairs, k, max_c);
    for (int c : cs) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%d,%d,%.6f\n", k, c, curve[static_cast<std::size_t>(c - 1)]);
      out << buf;
    }
  }
  files.insert(files.begin(), fs::path(o.lexicon));
  if (o.output.empty()) {
    std::cout << out.str();
  } else {
    write_text(o.output, out.str());
    write_sidecars(o.output, config, hash_inputs(files));
  }
  return kExitOk;
}

int cmd_render(const Options& o, const json& config) {
  RenderConfig rc;
  rc.mirror = o.mirror;
  rc.strict = o.strict;
  RenderedImage image = o.word_mode ? render_word(parse_word(std::string_view(o.text)), rc)
                                    : render_sentence(unicode::decode_utf8(o.text), rc);
  if (image.truncated) std::cerr << "warning: text truncated at " << rc.max_patches << " patches\n";
  if (image.mixed_direction)
    std::cerr << "warning: digits or Latin letters are laid out in logical order\n";
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + o.output);
  write_pgm(out, image.pixels);
  out.close();
  Fnv1a64 h;
  h.update(o.text);
  write_sidecars(o.output, config, h.hex());
  std::cerr << image.width() << "x" << image.height() << " pixels, " << image.patches.cols()
            << " patches\n";
  return kExitOk;
}

int cmd_train(const Options& o, const json& config) {
  const auto files = corpus_files(o.corpus);
  const auto sentences = load_sentences(files);
  EncoderConfig ec;
  ec.hidden = o.hidden;
  ec.embed = o.embed;
  ec.ngram_buckets = o.buckets;
  ec.window_radius = o.window;
  ec.activation = parse_activation(o.activation);
  ec.aux = parse_aux_mode(o.aux);
  RenderConfig rc;
  rc.mirror = o.mirror;
  TrainConfig tc;
  tc.steps = o.steps;
  tc.batch_size = o.batch;
  tc.learning_rate = o.lr;
  tc.momentum = o.momentum;
  tc.seed = o.seed;
  tc.k = o.k;
  tc.c = o.c;
  tc.balanced = o.balanced;
  tc.shuffle_labels = o.shuffle_labels;
  tc.validate();

  const std::string hash = hash_inputs(files);
  const TrainResult result = train(sentences, Model::initialize(ec, rc, o.seed), tc);
  save_checkpoint(o.output, result.model, with_hash(config, hash));
  write_sidecars(o.output, config, hash, false);
  if (!o.trace.empty()) {
    std::ostringstream csv;
    write_trace_csv(csv, result.trace);
    write_text(o.trace, csv.str());
    write_sidecars(o.trace, config, hash);
  }
  if (!result.trace.empty()) {
    const auto& last = result.trace.back();
    std::cerr << "step " << last.step << " loss " << last.loss << " batch accuracy "
              << last.accuracy << "\n";
  }
  std::cerr << "checksum " << result.model.checksum() << "\n";
  return kExitOk;
}

int cmd_evaluate(const Options& o, const json& config) {
  auto test_files = corpus_files(o.test);
  const auto gold = load_sentences(test_files);
  const VocTable voc = voc_from(o);
  if (!o.predicted.empty()) {
    const std::vector<fs::path> pred_files{fs::path(o.predicted)};
    const auto predicted = load_sentences(pred_files);
    test_files.push_back(o.predicted);
    emit_report(evaluate(gold, predicted, "external", voc), o, config, hash_inputs(test_files));
    return kExitOk;
  }
  if (o.checkpoint.empty() || o.lexicon.empty())
    throw UsageError("evaluate needs --checkpoint and --lexicon, or --predicted");
  const Model model = load_checkpoint(o.checkpoint);
  const Lexicon lexicon = load_lexicon(o.lexicon);
  const CandidateGenerator generator(lexicon);
  const ReferenceScorer scorer(model);
  const HarnessResult result = run_scheme(parse_scheme(o.scheme), scorer, generator, gold, o.k,
                                          o.c, HarnessOptions{o.threads, voc});
  test_files.insert(test_files.begin(), {fs::path(o.checkpoint), fs::path(o.lexicon)});
  const std::string hash = hash_inputs(test_files);
  emit_report(result.report, o, config, hash);
  emit_predictions(result.predictions, o, config, hash);
  return kExitOk;
}

int cmd_baseline(const Options& o, const json& config) {
  const Lexicon lexicon = load_lexicon(o.lexicon);
  auto files = corpus_files(o.test);
  const auto gold = load_sentences(files);
  const CandidateGenerator generator(lexicon);
  WordPredictor predictor;
  if (o.baseline == "majority") {
    predictor = [&](std::span<const std::u32string>, std::size_t, const DiacritizedWord& g) {
      return majority_predict(lexicon, strip(g));
    };
  } else {
    predictor = [&](std::span<const std::u32string>, std::size_t, const DiacritizedWord& g) {
      return knn1_predict(generator, strip(g));
    };
  }
  const HarnessResult result =
      run_predictor(gold, predictor, o.baseline, HarnessOptions{o.threads, voc_from(o)});
  files.insert(files.begin(), fs::path(o.lexicon));
  const std::string hash = hash_inputs(files);
  emit_report(result.report, o, config, hash);
  emit_predictions(result.predictions, o, config, hash);
  return kExitOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
      return kExitUsage;
    case ErrorCode::Divergence:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::TargetDerivationError:
      return kExitInternal;
    default:
      return kExitData;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"divrit: Hebrew diacritics restoration by candidate ranking"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  Options o;

  const auto add_k_c = [&](CLI::App* sub) {
    sub->add_option("-k,--neighbors", o.k, "neighbors per word")->check(CLI::PositiveNumber);
    sub->add_option("-c,--candidates", o.c, "candidates per word")->check(CLI::PositiveNumber);
  };
  const auto add_report = [&](CLI::App* sub) {
    sub->add_option("--test", o.test, "diacritized test corpus files or directories")->required();
    sub->add_option("-o,--output", o.output, "report JSON path");
    sub->add_option("--predictions", o.predictions, "write the predicted corpus here");
    sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--voc-table", o.voc_table, "JSON vocalization class table");
  };

  auto* build = app.add_subcommand("build-lexicon", "count diacritization patterns in a corpus");
  build->add_option("--corpus", o.corpus, "corpus files or directories")->required();
  build->add_option("-o,--output", o.output, "lexicon path")->required();
  build->add_flag("--strict", o.strict, "fail on the first malformed word");

  auto* cands = app.add_subcommand("candidates", "list KNN candidates for words");
  cands->add_option("--lexicon", o.lexicon)->required();
  cands->add_option("words", o.words, "words (UTF-8)")->required();
  cands->add_option("-o,--output", o.output);
  cands->add_flag("--oracle", o.oracle, "words are gold forms; inject them");
  add_k_c(cands);

  auto* cov = app.add_subcommand("coverage", "coverage of the gold form by c candidates");
  cov->add_option("--lexicon", o.lexicon)->required();
  cov->add_option("--test", o.test)->required();
  cov->add_option("-k,--neighbors", o.k_list, "k values: 5, 1..8 or 1,3,5");
  cov->add_option("-c,--candidates", o.c_list, "c values: 2, 1..8 or 1,2,4");
  cov->add_option("-o,--output", o.output, "CSV path");

  auto* render = app.add_subcommand("render", "rasterize text to a PGM image");
  render->add_option("--text", o.text, "UTF-8 text")->required();
  render->add_option("-o,--output", o.output, "PGM path")->required();
  render->add_flag("--word", o.word_mode, "parse the text as one diacritized word");
  render->add_flag("--mirror", o.mirror, "flip horizontally");
  render->add_flag("--strict", o.strict, "fail on glyphs the face lacks");

  auto* tr = app.add_subcommand("train", "train the reference scorer");
  tr->add_option("--corpus", o.corpus)->required();
  tr->add_option("-o,--output", o.output, "checkpoint path")->required();
  tr->add_option("--trace", o.trace, "per-step CSV trace path");
  tr->add_option("--steps", o.steps)->check(CLI::NonNegativeNumber);
  tr->add_option("--batch", o.batch)->check(CLI::PositiveNumber);
  tr->add_option("--lr", o.lr)->check(CLI::NonNegativeNumber);
  tr->add_option("--momentum", o.momentum);
  tr->add_option("--seed", o.seed);
  tr->add_option("--aux", o.aux)->check(CLI::IsMember({"none", "bag", "positional"}));
  tr->add_option("--activation", o.activation)->check(CLI::IsMember({"tanh", "identity"}));
  tr->add_flag("--mirror", o.mirror, "mirror candidate images");
  tr->add_flag("--balanced", o.balanced, "cap majority patterns when sampling");
  tr->add_flag("--shuffle-labels", o.shuffle_labels, "random gold labels (sanity baseline)");
  tr->add_option("--hidden", o.hidden)->check(CLI::PositiveNumber);
  tr->add_option("--embed", o.embed)->check(CLI::PositiveNumber);
  tr->add_option("--buckets", o.buckets)->check(CLI::PositiveNumber);
  tr->add_option("--window", o.window)->check(CLI::NonNegativeNumber);
  add_k_c(tr);

  auto* ev = app.add_subcommand("evaluate", "score a test corpus");
  ev->add_option("--checkpoint", o.checkpoint);
  ev->add_option("--lexicon", o.lexicon);
  ev->add_option("--scheme", o.scheme)->check(CLI::IsMember({"oracle", "knn"}));
  ev->add_option("--predicted", o.predicted, "judge this predicted corpus instead");
  add_k_c(ev);
  add_report(ev);

  auto* base = app.add_subcommand("baseline", "majority or 1-NN baseline");
  base->add_option("method", o.baseline)->required()->check(CLI::IsMember({"majority", "knn1"}));
  base->add_option("--lexicon", o.lexicon)->required();
  add_report(base);

  app.set_config("--config", "",
                 "TOML/INI file; options go under a [subcommand] section; flags win");

  // Accept --config after the subcommand name as well.
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      std::rotate(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(i),
                  args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      std::rotate(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(i),
                  args.begin() + static_cast<std::ptrdiff_t>(i + 1));
      break;
    }
  }
  std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    const json config = run_config(*sub);
    const std::string name = sub->get_name();
    if (name == "build-lexicon") return cmd_build_lexicon(o, config);
    if (name == "candidates") return cmd_candidates(o, config);
    if (name == "coverage") return cmd_coverage(o, config);
    if (name == "render") return cmd_render(o, config);
    if (name == "train") return cmd_train(o, config);
    if (name == "evaluate") return cmd_evaluate(o, config);
    if (name == "baseline") return cmd_baseline(o, config);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
