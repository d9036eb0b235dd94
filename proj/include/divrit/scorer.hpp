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

// Dual-encoder candidate scoring.
//
// A candidate image (a column of 16x16 patches) is embedded as
//
//   e = W_out * mean_j act(W_patch * p_j + b_patch) + b_out
//
// and the undiacritized word in context as
//
//   u = V_out * (m_0 * mean T[target n-grams] + m_1 * mean T[window n-grams]) + v_out
//
// Logits are <u, e_i>; probabilities their softmax. The training loss is
// cross-entropy against the gold candidate plus, optionally,
// (0.5 / N) * sum_i BCE(head(e_i), marks(c_i)), where the head predicts either
// the bag of marks in c_i or its (letter position, mark) grid. BCE is averaged
// over the entries it covers.
//
// Everything is templated on the scalar: float is enough for inference,
// gradient checks run in double.

#ifndef DIVRIT_SCORER_HPP_
#define DIVRIT_SCORER_HPP_

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "divrit/corpus.hpp"
#include "divrit/error.hpp"
#include "divrit/niqqud.hpp"
#include "divrit/render.hpp"

namespace divrit {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

enum class Activation { Tanh, Identity };
enum class AuxMode { None, Bag, Positional };

const char* to_string(Activation a);
const char* to_string(AuxMode m);
Activation parse_activation(std::string_view s);
AuxMode parse_aux_mode(std::string_view s);

inline constexpr int kMaxWordLength = 16;
inline constexpr double kAuxWeight = 0.5;

struct EncoderConfig {
  int hidden = 64;
  int embed = 64;
  int ngram_buckets = 4096;
  int max_ngram = 3;
  int window_radius = 2;
  Activation activation = Activation::Tanh;
  AuxMode aux = AuxMode::None;
  int max_word_length = kMaxWordLength;

  void validate() const;
  friend bool operator==(const EncoderConfig&, const EncoderConfig&) = default;
};

template <typename Scalar>
struct CandidateEncoderParams {
  MatrixX<Scalar> patch_proj;  // hidden x 256
  VectorX<Scalar> patch_bias;  // hidden
  MatrixX<Scalar> out_proj;    // embed x hidden
  VectorX<Scalar> out_bias;    // embed
};

template <typename Scalar>
struct ContextEncoderParams {
  MatrixX<Scalar> ngram_table;  // hidden x buckets
  VectorX<Scalar> mixing;       // (target, window)
  MatrixX<Scalar> out_proj;     // embed x hidden
  VectorX<Scalar> out_bias;     // embed
};

template <typename Scalar>
struct AuxHeadParams {
  MatrixX<Scalar> bag_weight;  // marks x embed
  VectorX<Scalar> bag_bias;
  MatrixX<Scalar> pos_weight;  // (max_word_length * marks) x embed, position-major
  VectorX<Scalar> pos_bias;
};

template <typename Scalar>
struct ModelParams {
  CandidateEncoderParams<Scalar> candidate;
  ContextEncoderParams<Scalar> context;
  AuxHeadParams<Scalar> aux;

  static ModelParams zeros(const EncoderConfig& config);
  template <typename To>
  ModelParams<To> cast() const;
};

// Calls f(name, tensor) for every parameter group in checkpoint order. The
// tensors are Eigen matrices or vectors; P may be const.
template <typename P, typename F>
void for_each_tensor(P& p, F&& f) {
  f("candidate.patch_proj", p.candidate.patch_proj);
  f("candidate.patch_bias", p.candidate.patch_bias);
  f("candidate.out_proj", p.candidate.out_proj);
  f("candidate.out_bias", p.candidate.out_bias);
  f("context.ngram_table", p.context.ngram_table);
  f("context.mixing", p.context.mixing);
  f("context.out_proj", p.context.out_proj);
  f("context.out_bias", p.context.out_bias);
  f("aux.bag_weight", p.aux.bag_weight);
  f("aux.bag_bias", p.aux.bag_bias);
  f("aux.pos_weight", p.aux.pos_weight);
  f("aux.pos_bias", p.aux.pos_bias);
}

// Same walk over two parameter sets of identical layout.
template <typename P, typename Q, typename F>
void for_each_tensor_pair(P& a, Q& b, F&& f) {
  f("candidate.patch_proj", a.candidate.patch_proj, b.candidate.patch_proj);
  f("candidate.patch_bias", a.candidate.patch_bias, b.candidate.patch_bias);
  f("candidate.out_proj", a.candidate.out_proj, b.candidate.out_proj);
  f("candidate.out_bias", a.candidate.out_bias, b.candidate.out_bias);
  f("context.ngram_table", a.context.ngram_table, b.context.ngram_table);
  f("context.mixing", a.context.mixing, b.context.mixing);
  f("context.out_proj", a.context.out_proj, b.context.out_proj);
  f("context.out_bias", a.context.out_bias, b.context.out_bias);
  f("aux.bag_weight", a.aux.bag_weight, b.aux.bag_weight);
  f("aux.bag_bias", a.aux.bag_bias, b.aux.bag_bias);
  f("aux.pos_weight", a.aux.pos_weight, b.aux.pos_weight);
  f("aux.pos_bias", a.aux.pos_bias, b.aux.pos_bias);
}

template <typename Scalar>
ModelParams<Scalar> ModelParams<Scalar>::zeros(const EncoderConfig& config) {
  const int h = config.hidden, d = config.embed, m = kNumMarks;
  ModelParams p;
  p.candidate.patch_proj = MatrixX<Scalar>::Zero(h, kPatchDim);
  p.candidate.patch_bias = VectorX<Scalar>::Zero(h);
  p.candidate.out_proj = MatrixX<Scalar>::Zero(d, h);
  p.candidate.out_bias = VectorX<Scalar>::Zero(d);
  p.context.ngram_table = MatrixX<Scalar>::Zero(h, config.ngram_buckets);
  p.context.mixing = VectorX<Scalar>::Zero(2);
  p.context.out_proj = MatrixX<Scalar>::Zero(d, h);
  p.context.out_bias = VectorX<Scalar>::Zero(d);
  p.aux.bag_weight = MatrixX<Scalar>::Zero(m, d);
  p.aux.bag_bias = VectorX<Scalar>::Zero(m);
  p.aux.pos_weight = MatrixX<Scalar>::Zero(config.max_word_length * m, d);
  p.aux.pos_bias = VectorX<Scalar>::Zero(config.max_word_length * m);
  return p;
}

template <typename Scalar>
template <typename To>
ModelParams<To> ModelParams<Scalar>::cast() const {
  ModelParams<To> out;
  for_each_tensor_pair(*this, out, [](std::string_view, const auto& src, auto& dst) {
    dst = src.template cast<To>();
  });
  return out;
}

// --- Context features --------------------------------------------------

// Hashed n-gram rows of the target word and of the words within
// window_radius tokens of it.
struct ContextFeatures {
  std::vector<int> target_rows;
  std::vector<int> window_rows;

  friend bool operator==(const ContextFeatures&, const ContextFeatures&) = default;
};

// Rows for the 1..max_ngram-grams of "<" + word + ">". `role` salts the hash so
// target and window n-grams land on different rows.
std::vector<int> ngram_rows(std::u32string_view word, int role, const EncoderConfig& config);

// tokens are undiacritized token texts; throws BadTargetIndex unless
// tokens[target] contains a Hebrew letter.
ContextFeatures context_features(std::span<const std::u32string> tokens, std::size_t target,
                                 const EncoderConfig& config);
// Strips marks from the sentence's tokens first.
ContextFeatures context_features(const Sentence& sentence, std::size_t target,
                                 const EncoderConfig& config);

// --- Forward passes ----------------------------------------------------

template <typename Scalar>
struct CandidateActivations {
  MatrixX<Scalar> hidden;  // hidden x patches, post-activation
  VectorX<Scalar> pooled;
};

template <typename Scalar>
VectorX<Scalar> encode_candidate(const MatrixX<Scalar>& patches,
                                 const CandidateEncoderParams<Scalar>& params,
                                 Activation activation,
                                 CandidateActivations<Scalar>* cache = nullptr) {
  if (patches.rows() != params.patch_proj.cols() || patches.cols() == 0)
    throw Error(ErrorCode::ShapeMismatch, "patch matrix does not match the encoder");
  MatrixX<Scalar> hidden = params.patch_proj * patches;
  hidden.colwise() += params.patch_bias;
  if (activation == Activation::Tanh) hidden = hidden.array().tanh().matrix();
  VectorX<Scalar> pooled = hidden.rowwise().mean();
  VectorX<Scalar> embedding = params.out_proj * pooled + params.out_bias;
  if (cache != nullptr) {
    cache->hidden = std::move(hidden);
    cache->pooled = std::move(pooled);
  }
  return embedding;
}

template <typename Scalar>
VectorX<Scalar> encode_candidate(const RenderedImage& image,
                                 const CandidateEncoderParams<Scalar>& params,
                                 Activation activation = Activation::Tanh) {
  return encode_candidate<Scalar>(image.patches.cast<Scalar>(), params, activation);
}

template <typename Scalar>
struct ContextActivations {
  VectorX<Scalar> target_mean;
  VectorX<Scalar> window_mean;
  VectorX<Scalar> mixed;
};

template <typename Scalar>
VectorX<Scalar> mean_rows(const MatrixX<Scalar>& table, const std::vector<int>& rows) {
  VectorX<Scalar> sum = VectorX<Scalar>::Zero(table.rows());
  if (rows.empty()) return sum;
  for (int r : rows) sum += table.col(r);
  return sum / static_cast<Scalar>(rows.size());
}

template <typename Scalar>
VectorX<Scalar> encode_context(const ContextFeatures& features,
                               const ContextEncoderParams<Scalar>& params,
                               ContextActivations<Scalar>* cache = nullptr) {
  for (const auto* rows : {&features.target_rows, &features.window_rows})
    for (int r : *rows)
      if (r < 0 || r >= params.ngram_table.cols())
        throw Error(ErrorCode::ShapeMismatch, "n-gram row outside the table");
  VectorX<Scalar> t = mean_rows(params.ngram_table, features.target_rows);
  VectorX<Scalar> w = mean_rows(params.ngram_table, features.window_rows);
  VectorX<Scalar> mixed = params.mixing(0) * t + params.mixing(1) * w;
  VectorX<Scalar> embedding = params.out_proj * mixed + params.out_bias;
  if (cache != nullptr) {
    cache->target_mean = std::move(t);
    cache->window_mean = std::move(w);
    cache->mixed = std::move(mixed);
  }
  return embedding;
}

// --- Scoring -----------------------------------------------------------

template <typename Scalar>
struct ScoreDistribution {
  VectorX<Scalar> logits;
  VectorX<Scalar> probabilities;

  // First index among ties.
  std::size_t argmax() const {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < logits.size(); ++i)
      if (logits(i) > logits(best)) best = i;
    return static_cast<std::size_t>(best);
  }
};

template <typename Scalar>
VectorX<Scalar> softmax(const VectorX<Scalar>& logits) {
  VectorX<Scalar> e = (logits.array() - logits.maxCoeff()).exp().matrix();
  return e / e.sum();
}

template <typename Scalar>
Scalar log_sum_exp(const VectorX<Scalar>& logits) {
  const Scalar m = logits.maxCoeff();
  return m + std::log((logits.array() - m).exp().sum());
}

template <typename Scalar>
ScoreDistribution<Scalar> score(const VectorX<Scalar>& context,
                                std::span<const VectorX<Scalar>> candidates) {
  if (candidates.empty()) throw Error(ErrorCode::EmptyCandidates, "no candidates to score");
  ScoreDistribution<Scalar> dist;
  dist.logits.resize(static_cast<Eigen::Index>(candidates.size()));
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].size() != context.size())
      throw Error(ErrorCode::DimensionMismatch,
                  "candidate " + std::to_string(i) + " has dimension " +
                      std::to_string(candidates[i].size()) + ", context " +
                      std::to_string(context.size()));
    dist.logits(static_cast<Eigen::Index>(i)) = context.dot(candidates[i]);
  }
  dist.probabilities = softmax(dist.logits);
  return dist;
}

template <typename Scalar>
Scalar cross_entropy(const ScoreDistribution<Scalar>& dist, std::size_t gold) {
  if (gold >= static_cast<std::size_t>(dist.logits.size()))
    throw Error(ErrorCode::BadTargetIndex, "gold index out of range");
  return log_sum_exp(dist.logits) - dist.logits(static_cast<Eigen::Index>(gold));
}

// Mean over the entries with mask 1 of the logistic loss; an empty mask
// means all entries.
template <typename Scalar>
Scalar bce_mean(const VectorX<Scalar>& logits, const VectorX<Scalar>& targets,
                const VectorX<Scalar>* mask = nullptr) {
  Scalar total = 0;
  Scalar count = 0;
  for (Eigen::Index i = 0; i < logits.size(); ++i) {
    const Scalar wgt = mask != nullptr ? (*mask)(i) : Scalar(1);
    if (wgt == Scalar(0)) continue;
    const Scalar z = logits(i);
    total += wgt * (std::max(z, Scalar(0)) - targets(i) * z + std::log1p(std::exp(-std::abs(z))));
    count += wgt;
  }
  return count > 0 ? total / count : Scalar(0);
}

template <typename Scalar>
Scalar sigmoid(Scalar z) {
  return z >= 0 ? Scalar(1) / (Scalar(1) + std::exp(-z))
                : std::exp(z) / (Scalar(1) + std::exp(z));
}

// --- Auxiliary targets -------------------------------------------------

template <typename Scalar>
struct AuxTargets {
  VectorX<Scalar> values;
  VectorX<Scalar> mask;  // empty for the bag head
};

// Bag: multi-hot over the mark inventory, union over letters. Positional:
// position-major grid, positions past the word (or past max_word_length)
// masked out.
template <typename Scalar>
AuxTargets<Scalar> aux_targets(const DiacritizationPattern& pattern, AuxMode mode,
                               int max_word_length) {
  AuxTargets<Scalar> t;
  if (pattern.size() == 0) throw Error(ErrorCode::TargetDerivationError, "empty pattern");
  if (mode == AuxMode::Bag) {
    t.values = VectorX<Scalar>::Zero(kNumMarks);
    for (const MarkSet& slot : pattern.slots)
      for (char32_t m : slot.marks()) t.values(mark_index(m)) = 1;
  } else if (mode == AuxMode::Positional) {
    t.values = VectorX<Scalar>::Zero(max_word_length * kNumMarks);
    t.mask = VectorX<Scalar>::Zero(max_word_length * kNumMarks);
    const int n = std::min<int>(static_cast<int>(pattern.size()), max_word_length);
    for (int pos = 0; pos < n; ++pos) {
      t.mask.segment(pos * kNumMarks, kNumMarks).setOnes();
      for (char32_t m : pattern.slots[static_cast<std::size_t>(pos)].marks())
        t.values(pos * kNumMarks + mark_index(m)) = 1;
    }
  }
  return t;
}

// --- Loss and gradients ------------------------------------------------

template <typename Scalar>
struct ScoringExample {
  ContextFeatures context;
  std::vector<MatrixX<Scalar>> candidate_patches;
  std::vector<DiacritizationPattern> candidate_patterns;  // aux targets
  std::size_t gold = 0;
};

template <typename Scalar>
struct LossBreakdown {
  Scalar total = 0;
  Scalar cross_entropy = 0;
  Scalar auxiliary = 0;
  ScoreDistribution<Scalar> distribution;
};

// Forward pass, and when `grads` is non-null the gradient of the total loss
// accumulated (+=) into it. `grads` must have the layout of `params`.
template <typename Scalar>
LossBreakdown<Scalar> loss_and_gradient(const ModelParams<Scalar>& params,
                                        const EncoderConfig& config,
                                        const ScoringExample<Scalar>& example,
                                        ModelParams<Scalar>* grads = nullptr) {
  const std::size_t n = example.candidate_patches.size();
  if (n == 0) throw Error(ErrorCode::EmptyCandidates, "example has no candidates");
  if (example.gold >= n) throw Error(ErrorCode::BadTargetIndex, "gold index out of range");
  const bool aux = config.aux != AuxMode::None;
  if (aux && example.candidate_patterns.size() != n)
    throw Error(ErrorCode::TargetDerivationError, "one pattern per candidate is required");

  ContextActivations<Scalar> ctx_cache;
  const VectorX<Scalar> u = encode_context(example.context, params.context, &ctx_cache);
  std::vector<CandidateActivations<Scalar>> cand_cache(n);
  std::vector<VectorX<Scalar>> embeddings(n);
  for (std::size_t i = 0; i < n; ++i)
    embeddings[i] = encode_candidate(example.candidate_patches[i], params.candidate,
                                     config.activation, &cand_cache[i]);

  LossBreakdown<Scalar> out;
  out.distribution = score<Scalar>(u, embeddings);
  out.cross_entropy = cross_entropy(out.distribution, example.gold);

  const Scalar aux_scale = Scalar(kAuxWeight) / static_cast<Scalar>(n);
  std::vector<VectorX<Scalar>> aux_dlogits(n);
  std::vector<AuxTargets<Scalar>> targets(n);
  if (aux) {
    const bool bag = config.aux == AuxMode::Bag;
    const MatrixX<Scalar>& w = bag ? params.aux.bag_weight : params.aux.pos_weight;
    const VectorX<Scalar>& b = bag ? params.aux.bag_bias : params.aux.pos_bias;
    for (std::size_t i = 0; i < n; ++i) {
      targets[i] = aux_targets<Scalar>(example.candidate_patterns[i], config.aux,
                                       config.max_word_length);
      const VectorX<Scalar> z = w * embeddings[i] + b;
      const VectorX<Scalar>* mask = bag ? nullptr : &targets[i].mask;
      out.auxiliary += aux_scale * bce_mean(z, targets[i].values, mask);
      if (grads != nullptr) {
        // d(mean BCE)/dz = (sigmoid(z) - t) * mask / |mask|
        VectorX<Scalar> g(z.size());
        Scalar count = 0;
        for (Eigen::Index k = 0; k < z.size(); ++k) {
          const Scalar m = mask != nullptr ? (*mask)(k) : Scalar(1);
          g(k) = m * (sigmoid(z(k)) - targets[i].values(k));
          count += m;
        }
        aux_dlogits[i] = count > 0 ? VectorX<Scalar>(g * (aux_scale / count))
                                   : VectorX<Scalar>(VectorX<Scalar>::Zero(z.size()));
      }
    }
  }
  out.total = out.cross_entropy + out.auxiliary;
  if (grads == nullptr) return out;

  // Cross-entropy through the inner products.
  VectorX<Scalar> dlogits = out.distribution.probabilities;
  dlogits(static_cast<Eigen::Index>(example.gold)) -= Scalar(1);
  VectorX<Scalar> du = VectorX<Scalar>::Zero(u.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Scalar dl = dlogits(static_cast<Eigen::Index>(i));
    du += dl * embeddings[i];
    VectorX<Scalar> de = dl * u;
    if (aux) {
      const bool bag = config.aux == AuxMode::Bag;
      MatrixX<Scalar>& gw = bag ? grads->aux.bag_weight : grads->aux.pos_weight;
      VectorX<Scalar>& gb = bag ? grads->aux.bag_bias : grads->aux.pos_bias;
      const MatrixX<Scalar>& w = bag ? params.aux.bag_weight : params.aux.pos_weight;
      gw.noalias() += aux_dlogits[i] * embeddings[i].transpose();
      gb += aux_dlogits[i];
      de.noalias() += w.transpose() * aux_dlogits[i];
    }
    // Candidate encoder.
    const auto& cache = cand_cache[i];
    grads->candidate.out_proj.noalias() += de * cache.pooled.transpose();
    grads->candidate.out_bias += de;
    const VectorX<Scalar> dpooled = params.candidate.out_proj.transpose() * de;
    const Scalar inv_patches = Scalar(1) / static_cast<Scalar>(cache.hidden.cols());
    MatrixX<Scalar> dpre = (dpooled * inv_patches).replicate(1, cache.hidden.cols());
    if (config.activation == Activation::Tanh)
      dpre.array() *= Scalar(1) - cache.hidden.array().square();
    grads->candidate.patch_proj.noalias() +=
        dpre * example.candidate_patches[i].transpose();
    grads->candidate.patch_bias += dpre.rowwise().sum();
  }

  // Context encoder.
  grads->context.out_proj.noalias() += du * ctx_cache.mixed.transpose();
  grads->context.out_bias += du;
  const VectorX<Scalar> dmixed = params.context.out_proj.transpose() * du;
  grads->context.mixing(0) += dmixed.dot(ctx_cache.target_mean);
  grads->context.mixing(1) += dmixed.dot(ctx_cache.window_mean);
  const auto scatter = [&](const std::vector<int>& rows, Scalar weight) {
    if (rows.empty()) return;
    const VectorX<Scalar> d = dmixed * (weight / static_cast<Scalar>(rows.size()));
    for (int r : rows) grads->context.ngram_table.col(r) += d;
  };
  scatter(example.context.target_rows, params.context.mixing(0));
  scatter(example.context.window_rows, params.context.mixing(1));
  return out;
}

// --- Gradient check ----------------------------------------------------

struct GroupError {
  std::string name;
  double error = 0.0;  // max |analytic - numeric| / max(|analytic|_inf, |numeric|_inf, 1e-6)
};

struct GradCheckReport {
  double max_relative_error = 0.0;
  std::vector<GroupError> groups;
};

// Central differences against loss_and_gradient. Each group's error is
// normalized by the larger infinity norm of its two gradients, floored at
// 1e-6 so that groups with a structurally zero gradient (a bias shared by all
// candidates, say) report rounding noise rather than noise over noise. Table columns no n-gram of the
// example touches are skipped (both gradients are exactly zero there).
template <typename Scalar>
GradCheckReport grad_check(const ModelParams<Scalar>& params, const EncoderConfig& config,
                           const ScoringExample<Scalar>& example, double eps) {
  if (eps < 1e-6 || eps > 1e-3)
    throw Error(ErrorCode::ConfigError, "eps must lie in [1e-6, 1e-3]");
  ModelParams<Scalar> analytic = ModelParams<Scalar>::zeros(config);
  loss_and_gradient(params, config, example, &analytic);

  std::vector<int> touched = example.context.target_rows;
  touched.insert(touched.end(), example.context.window_rows.begin(),
                 example.context.window_rows.end());
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

  ModelParams<Scalar> probe = params;
  GradCheckReport report;
  const Scalar h = static_cast<Scalar>(eps);
  for_each_tensor_pair(probe, analytic, [&](std::string_view name, auto& tensor,
                                            const auto& grad) {
    const bool is_table = name == "context.ngram_table";
    double max_diff = 0.0, max_a = 0.0, max_n = 0.0;
    auto check_entry = [&](Eigen::Index r, Eigen::Index c) {
      const Scalar saved = tensor(r, c);
      tensor(r, c) = saved + h;
      const Scalar up = loss_and_gradient(probe, config, example).total;
      tensor(r, c) = saved - h;
      const Scalar down = loss_and_gradient(probe, config, example).total;
      tensor(r, c) = saved;
      const double numeric = static_cast<double>((up - down) / (Scalar(2) * h));
      const double a = static_cast<double>(grad(r, c));
      max_diff = std::max(max_diff, std::abs(a - numeric));
      max_a = std::max(max_a, std::abs(a));
      max_n = std::max(max_n, std::abs(numeric));
    };
    if (is_table) {
      for (int c : touched)
        for (Eigen::Index r = 0; r < tensor.rows(); ++r) check_entry(r, c);
    } else {
      for (Eigen::Index c = 0; c < tensor.cols(); ++c)
        for (Eigen::Index r = 0; r < tensor.rows(); ++r) check_entry(r, c);
    }
    const double err = max_diff / std::max({max_a, max_n, 1e-6});
    report.groups.push_back({std::string(name), err});
    report.max_relative_error = std::max(report.max_relative_error, err);
  });
  return report;
}

}  // namespace divrit

#endif  // DIVRIT_SCORER_HPP_
