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

#include "divrit/unicode.hpp"

#include <array>
#include <cstdint>

#include "divrit/error.hpp"

namespace divrit {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::OrphanMark: return "OrphanMark";
    case ErrorCode::UnsupportedMark: return "UnsupportedMark";
    case ErrorCode::InvalidCluster: return "InvalidCluster";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidBase: return "InvalidBase";
    case ErrorCode::NoNeighbors: return "NoNeighbors";
    case ErrorCode::TooWide: return "TooWide";
    case ErrorCode::MissingGlyph: return "MissingGlyph";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyCandidates: return "EmptyCandidates";
    case ErrorCode::BadTargetIndex: return "BadTargetIndex";
    case ErrorCode::TargetDerivationError: return "TargetDerivationError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::Divergence: return "Divergence";
    case ErrorCode::StripMismatch: return "StripMismatch";
    case ErrorCode::AlignmentError: return "AlignmentError";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace unicode {

std::u32string decode_utf8(std::string_view bytes) {
  constexpr char32_t kReplacement = 0xFFFD;
  std::u32string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    const auto b0 = static_cast<std::uint8_t>(bytes[i]);
    int len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    } else if (b0 == 0xC0 || b0 == 0xC1 || b0 >= 0xF5) {
      // Can only start an overlong or out-of-range sequence.
      out.push_back(kReplacement);
      ++i;
      continue;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    if (i + len > n) {
      out.push_back(kReplacement);
      break;
    }
    bool ok = true;
    for (int k = 1; k < len; ++k) {
      const auto b = static_cast<std::uint8_t>(bytes[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlongs, surrogates and out-of-range scalars.
    static constexpr std::array<char32_t, 5> kMin = {0, 0, 0x80, 0x800, 0x10000};
    if (!ok || cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      out.push_back(kReplacement);
      i += ok ? len : 1;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size() * 2);
  for (char32_t cp : text) out += encode_utf8(cp);
  return out;
}

bool is_space(char32_t c) {
  switch (c) {
    case U' ': case U'\t': case U'\n': case U'\r': case U'\v': case U'\f':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

namespace {

struct Decomposition {
  char32_t composed;
  char32_t parts[3];
};

// Unassigned code points in the block are absent; U+FB1F (yod-yod-patah)
// has no decomposition onto a single base letter and is left alone.
constexpr Decomposition kHebrewPresentation[] = {
    {0xFB1D, {0x05D9, 0x05B4, 0}}, {0xFB2A, {0x05E9, 0x05C1, 0}},
    {0xFB2B, {0x05E9, 0x05C2, 0}}, {0xFB2C, {0x05E9, 0x05BC, 0x05C1}},
    {0xFB2D, {0x05E9, 0x05BC, 0x05C2}}, {0xFB2E, {0x05D0, 0x05B7, 0}},
    {0xFB2F, {0x05D0, 0x05B8, 0}}, {0xFB30, {0x05D0, 0x05BC, 0}},
    {0xFB31, {0x05D1, 0x05BC, 0}}, {0xFB32, {0x05D2, 0x05BC, 0}},
    {0xFB33, {0x05D3, 0x05BC, 0}}, {0xFB34, {0x05D4, 0x05BC, 0}},
    {0xFB35, {0x05D5, 0x05BC, 0}}, {0xFB36, {0x05D6, 0x05BC, 0}},
    {0xFB38, {0x05D8, 0x05BC, 0}}, {0xFB39, {0x05D9, 0x05BC, 0}},
    {0xFB3A, {0x05DA, 0x05BC, 0}}, {0xFB3B, {0x05DB, 0x05BC, 0}},
    {0xFB3C, {0x05DC, 0x05BC, 0}}, {0xFB3E, {0x05DE, 0x05BC, 0}},
    {0xFB40, {0x05E0, 0x05BC, 0}}, {0xFB41, {0x05E1, 0x05BC, 0}},
    {0xFB43, {0x05E3, 0x05BC, 0}}, {0xFB44, {0x05E4, 0x05BC, 0}},
    {0xFB46, {0x05E6, 0x05BC, 0}}, {0xFB47, {0x05E7, 0x05BC, 0}},
    {0xFB48, {0x05E8, 0x05BC, 0}}, {0xFB49, {0x05E9, 0x05BC, 0}},
    {0xFB4A, {0x05EA, 0x05BC, 0}}, {0xFB4B, {0x05D5, 0x05B9, 0}},
    {0xFB4C, {0x05D1, 0x05BF, 0}}, {0xFB4D, {0x05DB, 0x05BF, 0}},
    {0xFB4E, {0x05E4, 0x05BF, 0}},
};

}  // namespace

std::u32string decompose(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  for (char32_t c : text) {
    if (c < 0xFB1D || c > 0xFB4E) {
      out.push_back(c);
      continue;
    }
    bool found = false;
    for (const auto& d : kHebrewPresentation) {
      if (d.composed == c) {
        for (char32_t p : d.parts)
          if (p != 0) out.push_back(p);
        found = true;
        break;
      }
    }
    if (!found) out.push_back(c);
  }
  return out;
}

}  // namespace unicode
}  // namespace divrit
