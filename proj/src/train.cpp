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

#include "divrit/train.hpp"

#include <cmath>
#include <ostream>
#include <map>

#include "divrit/hash.hpp"

namespace divrit {
namespace {

std::vector<std::u32string> stripped_tokens(const Sentence& s) {
  std::vector<std::u32string> out;
  out.reserve(s.tokens.size());
  for (std::size_t i = 0; i < s.tokens.size(); ++i) out.push_back(strip_marks(s.token_text(i)));
  return out;
}

}  // namespace

OccurrenceIndex::OccurrenceIndex(std::span<const Sentence> corpus) : corpus_(corpus) {
  for (std::size_t si = 0; si < corpus.size(); ++si) {
    const Sentence& s = corpus[si];
    for (std::size_t ti = 0; ti < s.tokens.size(); ++ti) {
      if (!s.tokens[ti].is_hebrew_word) continue;
      DiacritizedWord word;
      try {
        word = parse_word(s.token_text(ti));
      } catch (const Error&) {
        continue;
      }
      const Occurrence occ{si, ti};
      index_[strip(word)][pattern_to_string(extract_pattern(word))].push_back(occ);
      all_.push_back(occ);
    }
  }
}

const std::vector<Occurrence>* OccurrenceIndex::find(const std::u32string& form,
                                                     const std::string& pattern) const {
  const auto it = index_.find(form);
  if (it == index_.end()) return nullptr;
  const auto jt = it->second.find(pattern);
  return jt == it->second.end() ? nullptr : &jt->second;
}

LabeledExample OccurrenceIndex::example(const Occurrence& occ,
                                        const CandidateGenerator& generator, int k,
                                        int c) const {
  const Sentence& s = corpus_[occ.sentence];
  const DiacritizedWord gold = parse_word(s.token_text(occ.token));
  LabeledExample ex;
  ex.tokens = stripped_tokens(s);
  ex.target = occ.token;
  ex.candidates = generator.oracle(strip(gold), gold, k, c);
  return ex;
}

std::vector<LabeledExample> build_examples(std::span<const Sentence> corpus,
                                           const CandidateGenerator& generator, int k, int c) {
  const OccurrenceIndex index(corpus);
  std::vector<LabeledExample> out;
  out.reserve(index.all().size());
  for (const Occurrence& occ : index.all()) out.push_back(index.example(occ, generator, k, c));
  return out;
}

void TrainConfig::validate() const {
  if (steps < 0) throw Error(ErrorCode::ConfigError, "steps must be >= 0");
  if (batch_size < 1) throw Error(ErrorCode::ConfigError, "batch size must be positive");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
    throw Error(ErrorCode::ConfigError, "learning rate must be finite and >= 0");
  if (!(momentum >= 0.0 && momentum < 1.0))
    throw Error(ErrorCode::ConfigError, "momentum must lie in [0, 1)");
  if (k < 1 || c < 1) throw Error(ErrorCode::ConfigError, "k and c must be positive");
}

ScoringExample<double> to_scoring_example(const LabeledExample& example, const Model& model,
                                          const ReferenceScorer& renderer) {
  if (!example.candidates.gold_index)
    throw Error(ErrorCode::BadTargetIndex, "training example without a gold index");
  ScoringExample<double> out;
  out.context = context_features(example.tokens, example.target, model.encoder);
  for (const DiacritizedWord& c : example.candidates.candidates) {
    out.candidate_patches.push_back(renderer.patches(c));
    out.candidate_patterns.push_back(extract_pattern(c));
  }
  out.gold = *example.candidates.gold_index;
  return out;
}

TrainResult train(std::span<const Sentence> corpus, Model model, const TrainConfig& config) {
  config.validate();
  TrainResult result{std::move(model), {}};
  Model& m = result.model;
  if (config.steps == 0) return result;

  const Lexicon lexicon = build_lexicon(corpus);
  if (lexicon.empty()) throw Error(ErrorCode::EmptyInput, "training corpus has no Hebrew words");
  const Lexicon sampling = config.balanced ? balanced_cap(lexicon) : lexicon;
  const SamplingTable table = SamplingTable::from_lexicon(sampling);
  const CandidateGenerator generator(lexicon);
  const OccurrenceIndex index(corpus);
  const ReferenceScorer renderer(m);

  // Candidate generation is the expensive part of example construction;
  // occurrences recur, so keep what was built.
  std::map<std::pair<std::size_t, std::size_t>, ScoringExample<double>> built;

  Rng rng(config.seed);
  ModelParams<double> velocity = ModelParams<double>::zeros(m.encoder);
  result.trace.reserve(static_cast<std::size_t>(config.steps));

  for (int step = 1; step <= config.steps; ++step) {
    ModelParams<double> grads = ModelParams<double>::zeros(m.encoder);
    TraceRow row;
    row.step = step;
    int correct = 0;
    for (int b = 0; b < config.batch_size; ++b) {
      const std::u32string& form = table.forms[table.sample(rng.uniform())];
      const auto& patterns = *sampling.find(form);
      std::int64_t total = 0;
      for (const auto& pc : patterns) total += pc.count;
      auto pick = static_cast<std::int64_t>(rng.uniform() * static_cast<double>(total));
      std::size_t pi = 0;
      while (pi + 1 < patterns.size() && pick >= patterns[pi].count) pick -= patterns[pi++].count;
      const auto* occs = index.find(form, pattern_to_string(patterns[pi].pattern));
      if (occs == nullptr || occs->empty())
        throw Error(ErrorCode::TargetDerivationError, "lexicon entry without occurrences");
      const Occurrence& occ = (*occs)[rng.index(occs->size())];

      const std::pair key{occ.sentence, occ.token};
      auto it = built.find(key);
      if (it == built.end())
        it = built.emplace(key, to_scoring_example(index.example(occ, generator, config.k, config.c),
                                                   m, renderer))
                 .first;
      ScoringExample<double> example = it->second;
      if (config.shuffle_labels) example.gold = rng.index(example.candidate_patches.size());

      const auto loss = loss_and_gradient(m.params, m.encoder, example, &grads);
      if (!std::isfinite(loss.total))
        throw Error(ErrorCode::Divergence, "non-finite loss at step " + std::to_string(step));
      row.loss += loss.total;
      row.cross_entropy += loss.cross_entropy;
      row.auxiliary += loss.auxiliary;
      correct += loss.distribution.argmax() == example.gold ? 1 : 0;
    }
    const double inv = 1.0 / config.batch_size;
    row.loss *= inv;
    row.cross_entropy *= inv;
    row.auxiliary *= inv;
    row.accuracy = correct * inv;
    result.trace.push_back(row);

    // v <- momentum * v + g / B;  p <- p - lr * v
    auto update = [&](auto& p, auto& v, const auto& g) {
      v = config.momentum * v + inv * g;
      p -= config.learning_rate * v;
    };
    update(m.params.candidate.patch_proj, velocity.candidate.patch_proj, grads.candidate.patch_proj);
    update(m.params.candidate.patch_bias, velocity.candidate.patch_bias, grads.candidate.patch_bias);
    update(m.params.candidate.out_proj, velocity.candidate.out_proj, grads.candidate.out_proj);
    update(m.params.candidate.out_bias, velocity.candidate.out_bias, grads.candidate.out_bias);
    update(m.params.context.ngram_table, velocity.context.ngram_table, grads.context.ngram_table);
    update(m.params.context.mixing, velocity.context.mixing, grads.context.mixing);
    update(m.params.context.out_proj, velocity.context.out_proj, grads.context.out_proj);
    update(m.params.context.out_bias, velocity.context.out_bias, grads.context.out_bias);
    update(m.params.aux.bag_weight, velocity.aux.bag_weight, grads.aux.bag_weight);
    update(m.params.aux.bag_bias, velocity.aux.bag_bias, grads.aux.bag_bias);
    update(m.params.aux.pos_weight, velocity.aux.pos_weight, grads.aux.pos_weight);
    update(m.params.aux.pos_bias, velocity.aux.pos_bias, grads.aux.pos_bias);

    bool finite = true;
    for_each_tensor(m.params, [&](std::string_view, const auto& t) {
      finite = finite && t.allFinite();
    });
    if (!finite)
      throw Error(ErrorCode::Divergence, "non-finite parameters after step " + std::to_string(step));
  }
  return result;
}

double oracle_accuracy(const Model& model, std::span<const LabeledExample> examples) {
  if (examples.empty()) throw Error(ErrorCode::EmptyInput, "no examples");
  const ReferenceScorer scorer(model);
  std::size_t correct = 0;
  for (const auto& ex : examples) {
    const auto dist = scorer.score(ex.tokens, ex.target, ex.candidates.candidates);
    if (ex.candidates.gold_index && dist.argmax() == *ex.candidates.gold_index) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(examples.size());
}

void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace) {
  out << "step,loss,cross_entropy,auxiliary,accuracy\n";
  const auto old_precision = out.precision(17);
  for (const auto& r : trace)
    out << r.step << ',' << r.loss << ',' << r.cross_entropy << ',' << r.auxiliary << ','
        << r.accuracy << '\n';
  out.precision(old_precision);
}

}  // namespace divrit
