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

#include "divrit/model.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "divrit/hash.hpp"

namespace divrit {
namespace {

using nlohmann::json;

template <typename T>
void fill_uniform(T& tensor, double limit, Rng& rng) {
  for (Eigen::Index c = 0; c < tensor.cols(); ++c)
    for (Eigen::Index r = 0; r < tensor.rows(); ++r) tensor(r, c) = rng.uniform(-limit, limit);
}

json encoder_to_json(const EncoderConfig& e) {
  return {{"hidden", e.hidden},
          {"embed", e.embed},
          {"ngram_buckets", e.ngram_buckets},
          {"max_ngram", e.max_ngram},
          {"window_radius", e.window_radius},
          {"activation", to_string(e.activation)},
          {"aux", to_string(e.aux)},
          {"max_word_length", e.max_word_length}};
}

EncoderConfig encoder_from_json(const json& j) {
  EncoderConfig e;
  e.hidden = j.at("hidden").get<int>();
  e.embed = j.at("embed").get<int>();
  e.ngram_buckets = j.at("ngram_buckets").get<int>();
  e.max_ngram = j.at("max_ngram").get<int>();
  e.window_radius = j.at("window_radius").get<int>();
  e.activation = parse_activation(j.at("activation").get<std::string>());
  e.aux = parse_aux_mode(j.at("aux").get<std::string>());
  e.max_word_length = j.at("max_word_length").get<int>();
  e.validate();
  return e;
}

json render_to_json(const RenderConfig& r) {
  return {{"cell_height", r.cell_height},     {"advance_width", r.advance_width},
          {"max_patches", r.max_patches},     {"mirror", r.mirror},
          {"strict", r.strict},               {"glyph_source", r.glyph_source}};
}

RenderConfig render_from_json(const json& j) {
  RenderConfig r;
  r.cell_height = j.at("cell_height").get<int>();
  r.advance_width = j.at("advance_width").get<int>();
  r.max_patches = j.at("max_patches").get<int>();
  r.mirror = j.at("mirror").get<bool>();
  r.strict = j.at("strict").get<bool>();
  r.glyph_source = j.at("glyph_source").get<std::string>();
  r.validate();
  return r;
}

}  // namespace

Model Model::initialize(const EncoderConfig& encoder, const RenderConfig& render,
                        std::uint64_t seed) {
  encoder.validate();
  render.validate();
  Model m{encoder, render, ModelParams<double>::zeros(encoder)};
  Rng rng(seed);
  auto& p = m.params;
  fill_uniform(p.candidate.patch_proj, std::sqrt(3.0 / kPatchDim), rng);
  fill_uniform(p.candidate.out_proj, std::sqrt(3.0 / encoder.hidden), rng);
  fill_uniform(p.context.ngram_table, 0.1, rng);
  p.context.mixing.setOnes();
  fill_uniform(p.context.out_proj, std::sqrt(3.0 / encoder.hidden), rng);
  fill_uniform(p.aux.bag_weight, std::sqrt(3.0 / encoder.embed), rng);
  fill_uniform(p.aux.pos_weight, std::sqrt(3.0 / encoder.embed), rng);
  return m;
}

std::string Model::checksum() const {
  Fnv1a64 h;
  for_each_tensor(params, [&](std::string_view name, const auto& t) {
    h.update(name);
    for (Eigen::Index c = 0; c < t.cols(); ++c)
      for (Eigen::Index r = 0; r < t.rows(); ++r) {
        const double v = t(r, c);
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        h.update_u32(static_cast<std::uint32_t>(bits));
        h.update_u32(static_cast<std::uint32_t>(bits >> 32));
      }
  });
  return h.hex();
}

const MatrixX<double>& ReferenceScorer::patches(const DiacritizedWord& word) const {
  const std::u32string key = to_text(word);
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  MatrixX<double> rendered = render_word(word, model_->render).patches.cast<double>();
  std::lock_guard lock(mutex_);
  // std::map never moves nodes, so the reference stays valid.
  return cache_.try_emplace(key, std::move(rendered)).first->second;
}

ScoreDistribution<double> ReferenceScorer::score(std::span<const std::u32string> tokens,
                                                 std::size_t target,
                                                 std::span<const DiacritizedWord> candidates) const {
  if (candidates.empty()) throw Error(ErrorCode::EmptyCandidates, "no candidates to score");
  const auto features = context_features(tokens, target, model_->encoder);
  const VectorX<double> u = encode_context(features, model_->params.context);
  std::vector<VectorX<double>> embeddings;
  embeddings.reserve(candidates.size());
  for (const auto& c : candidates)
    embeddings.push_back(
        encode_candidate(patches(c), model_->params.candidate, model_->encoder.activation));
  return divrit::score<double>(u, embeddings);
}

ScoreDistribution<double> EmbeddingScorer::score(std::span<const std::u32string> tokens,
                                                 std::size_t target,
                                                 std::span<const DiacritizedWord> candidates) const {
  if (candidates.empty()) throw Error(ErrorCode::EmptyCandidates, "no candidates to score");
  if (target >= tokens.size()) throw Error(ErrorCode::BadTargetIndex, "target out of range");
  const VectorX<double> u = context_(tokens, target);
  std::vector<VectorX<double>> embeddings;
  embeddings.reserve(candidates.size());
  for (const auto& c : candidates) embeddings.push_back(candidate_(c));
  return divrit::score<double>(u, embeddings);
}

std::string checkpoint_to_string(const Model& model, const std::string& run_config_json) {
  json j;
  j["format"] = kCheckpointFormat;
  j["version"] = kCheckpointVersion;
  j["encoder"] = encoder_to_json(model.encoder);
  j["render"] = render_to_json(model.render);
  json run = json::parse(run_config_json, nullptr, false);
  if (run.is_discarded()) throw Error(ErrorCode::FormatError, "run config is not valid JSON");
  j["run_config"] = run;
  j["checksum"] = model.checksum();
  json tensors = json::array();
  for_each_tensor(model.params, [&](std::string_view name, const auto& t) {
    std::vector<double> data(static_cast<std::size_t>(t.size()));
    Eigen::Map<MatrixX<double>>(data.data(), t.rows(), t.cols()) = t;
    tensors.push_back({{"name", name}, {"shape", {t.rows(), t.cols()}}, {"data", data}});
  });
  j["tensors"] = std::move(tensors);
  return j.dump() + "\n";
}

Model checkpoint_from_string(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw Error(ErrorCode::FormatError, "checkpoint is not a JSON object");
  try {
    if (j.at("format").get<std::string>() != kCheckpointFormat)
      throw Error(ErrorCode::FormatError, "not a divrit checkpoint");
    if (j.at("version").get<int>() != kCheckpointVersion)
      throw Error(ErrorCode::FormatError,
                  "unsupported checkpoint version " + std::to_string(j.at("version").get<int>()));
    Model m;
    m.encoder = encoder_from_json(j.at("encoder"));
    m.render = render_from_json(j.at("render"));
    m.params = ModelParams<double>::zeros(m.encoder);
    const json& tensors = j.at("tensors");
    std::size_t index = 0;
    for_each_tensor(m.params, [&](std::string_view name, auto& t) {
      if (index >= tensors.size()) throw Error(ErrorCode::FormatError, "missing tensors");
      const json& entry = tensors[index++];
      if (entry.at("name").get<std::string>() != name)
        throw Error(ErrorCode::FormatError, "expected tensor " + std::string(name));
      const auto shape = entry.at("shape").get<std::vector<Eigen::Index>>();
      if (shape.size() != 2 || shape[0] != t.rows() || shape[1] != t.cols())
        throw Error(ErrorCode::ShapeMismatch, "tensor " + std::string(name) + " has the wrong shape");
      const auto data = entry.at("data").get<std::vector<double>>();
      if (data.size() != static_cast<std::size_t>(t.size()))
        throw Error(ErrorCode::FormatError, "tensor " + std::string(name) + " data size");
      t = Eigen::Map<const MatrixX<double>>(data.data(), t.rows(), t.cols());
    });
    if (index != tensors.size()) throw Error(ErrorCode::FormatError, "unexpected extra tensors");
    if (j.contains("checksum") && j.at("checksum").get<std::string>() != m.checksum())
      throw Error(ErrorCode::FormatError, "checkpoint checksum mismatch");
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::FormatError, std::string("malformed checkpoint: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& path, const Model& model,
                     const std::string& run_config_json) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << checkpoint_to_string(model, run_config_json);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

Model load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return checkpoint_from_string(buf.str());
}

}  // namespace divrit
