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

#ifndef DIVRIT_MODEL_HPP_
#define DIVRIT_MODEL_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "divrit/render.hpp"
#include "divrit/scorer.hpp"

namespace divrit {

// The reference model: encoder shapes, the rendering that feeds the
// candidate encoder, and double-precision parameters.
struct Model {
  EncoderConfig encoder;
  RenderConfig render;
  ModelParams<double> params;

  // Uniform(+-sqrt(3 / fan_in)) projections, Uniform(+-0.1) n-gram table,
  // zero biases, mixing weights (1, 1).
  static Model initialize(const EncoderConfig& encoder, const RenderConfig& render,
                          std::uint64_t seed);

  // FNV-1a over the little-endian bytes of every parameter, in checkpoint order.
  std::string checksum() const;
};

// Scores a candidate set for one target token. tokens are undiacritized.
class CandidateScorer {
 public:
  virtual ~CandidateScorer() = default;
  virtual ScoreDistribution<double> score(std::span<const std::u32string> tokens,
                                          std::size_t target,
                                          std::span<const DiacritizedWord> candidates) const = 0;
};

// Scores with the reference encoders. Rendered candidate patches are cached;
// safe for concurrent use.
class ReferenceScorer final : public CandidateScorer {
 public:
  explicit ReferenceScorer(const Model& model) : model_(&model) {}
  ScoreDistribution<double> score(std::span<const std::u32string> tokens, std::size_t target,
                                  std::span<const DiacritizedWord> candidates) const override;

  const MatrixX<double>& patches(const DiacritizedWord& word) const;

 private:
  const Model* model_;
  mutable std::mutex mutex_;
  mutable std::map<std::u32string, MatrixX<double>> cache_;
};

// Adapter for embeddings produced elsewhere (for example by full-scale
// pretrained encoders). Both callbacks must return vectors of one fixed
// dimension; alignment of subword units to the target word is the
// callback's business.
class EmbeddingScorer final : public CandidateScorer {
 public:
  using ContextFn =
      std::function<VectorX<double>(std::span<const std::u32string>, std::size_t)>;
  using CandidateFn = std::function<VectorX<double>(const DiacritizedWord&)>;

  EmbeddingScorer(ContextFn context, CandidateFn candidate)
      : context_(std::move(context)), candidate_(std::move(candidate)) {}
  ScoreDistribution<double> score(std::span<const std::u32string> tokens, std::size_t target,
                                  std::span<const DiacritizedWord> candidates) const override;

 private:
  ContextFn context_;
  CandidateFn candidate_;
};

inline constexpr std::string_view kCheckpointFormat = "divrit-checkpoint";
inline constexpr int kCheckpointVersion = 1;

// JSON container: format/version header, encoder and render configs, every
// parameter tensor with its shape (column-major data), and free-form run
// metadata. Doubles round-trip exactly.
void save_checkpoint(const std::filesystem::path& path, const Model& model,
                     const std::string& run_config_json = "{}");
Model load_checkpoint(const std::filesystem::path& path);
std::string checkpoint_to_string(const Model& model, const std::string& run_config_json = "{}");
Model checkpoint_from_string(const std::string& text);

}  // namespace divrit

#endif  // DIVRIT_MODEL_HPP_
