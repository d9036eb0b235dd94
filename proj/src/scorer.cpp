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

#include "divrit/scorer.hpp"

#include "divrit/hash.hpp"
#include "divrit/unicode.hpp"

namespace divrit {

const char* to_string(Activation a) {
  return a == Activation::Tanh ? "tanh" : "identity";
}

const char* to_string(AuxMode m) {
  switch (m) {
    case AuxMode::None: return "none";
    case AuxMode::Bag: return "bag";
    case AuxMode::Positional: return "positional";
  }
  return "none";
}

Activation parse_activation(std::string_view s) {
  if (s == "tanh") return Activation::Tanh;
  if (s == "identity") return Activation::Identity;
  throw Error(ErrorCode::ConfigError, "unknown activation '" + std::string(s) + "'");
}

AuxMode parse_aux_mode(std::string_view s) {
  if (s == "none") return AuxMode::None;
  if (s == "bag") return AuxMode::Bag;
  if (s == "positional") return AuxMode::Positional;
  throw Error(ErrorCode::ConfigError, "unknown aux mode '" + std::string(s) + "'");
}

void EncoderConfig::validate() const {
  if (hidden <= 0 || embed <= 0) throw Error(ErrorCode::ConfigError, "dimensions must be positive");
  if (ngram_buckets <= 0) throw Error(ErrorCode::ConfigError, "ngram_buckets must be positive");
  if (max_ngram < 1) throw Error(ErrorCode::ConfigError, "max_ngram must be at least 1");
  if (window_radius < 0) throw Error(ErrorCode::ConfigError, "window_radius must be >= 0");
  if (max_word_length < 1) throw Error(ErrorCode::ConfigError, "max_word_length must be positive");
}

std::vector<int> ngram_rows(std::u32string_view word, int role, const EncoderConfig& config) {
  std::u32string padded;
  padded.reserve(word.size() + 2);
  padded.push_back(U'<');
  padded.append(word);
  padded.push_back(U'>');
  std::vector<int> rows;
  for (int n = 1; n <= config.max_ngram; ++n) {
    if (static_cast<std::size_t>(n) > padded.size()) break;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= padded.size(); ++i) {
      Fnv1a64 h;
      h.update_u32(static_cast<std::uint32_t>(role));
      h.update_u32(static_cast<std::uint32_t>(n));
      for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j)
        h.update_u32(static_cast<std::uint32_t>(padded[i + j]));
      rows.push_back(static_cast<int>(h.digest() % static_cast<std::uint64_t>(config.ngram_buckets)));
    }
  }
  return rows;
}

ContextFeatures context_features(std::span<const std::u32string> tokens, std::size_t target,
                                 const EncoderConfig& config) {
  if (target >= tokens.size())
    throw Error(ErrorCode::BadTargetIndex, "target " + std::to_string(target) + " of " +
                                               std::to_string(tokens.size()) + " tokens");
  bool hebrew = false;
  for (char32_t c : tokens[target]) hebrew = hebrew || unicode::is_hebrew_letter(c);
  if (!hebrew) throw Error(ErrorCode::BadTargetIndex, "target token is not a Hebrew word");

  constexpr int kTargetRole = 1;
  constexpr int kWindowRole = 2;
  ContextFeatures f;
  f.target_rows = ngram_rows(tokens[target], kTargetRole, config);
  const std::size_t radius = static_cast<std::size_t>(config.window_radius);
  const std::size_t lo = target >= radius ? target - radius : 0;
  const std::size_t hi = std::min(tokens.size() - 1, target + radius);
  for (std::size_t i = lo; i <= hi; ++i) {
    if (i == target) continue;
    const auto rows = ngram_rows(tokens[i], kWindowRole, config);
    f.window_rows.insert(f.window_rows.end(), rows.begin(), rows.end());
  }
  return f;
}

ContextFeatures context_features(const Sentence& sentence, std::size_t target,
                                 const EncoderConfig& config) {
  std::vector<std::u32string> tokens;
  tokens.reserve(sentence.tokens.size());
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i)
    tokens.push_back(strip_marks(sentence.token_text(i)));
  return context_features(tokens, target, config);
}

}  // namespace divrit
