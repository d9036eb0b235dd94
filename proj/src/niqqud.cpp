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

#include "divrit/niqqud.hpp"

#include <bit>
#include <cstdio>

#include "divrit/error.hpp"
#include "divrit/unicode.hpp"

namespace divrit {

namespace {

std::string hex4(char32_t cp) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04X", static_cast<unsigned>(cp));
  return buf;
}

std::string describe(char32_t cp) { return "U+" + hex4(cp); }

}  // namespace

int mark_index(char32_t cp) {
  for (int i = 0; i < kNumMarks; ++i)
    if (kMarkInventory[i] == cp) return i;
  return -1;
}

bool is_inventory_mark(char32_t cp) { return mark_index(cp) >= 0; }

bool is_vowel_mark(char32_t cp) {
  return (cp >= mark::kSheva && cp <= mark::kQubuts) || cp == mark::kQamatsQatan;
}

MarkSet MarkSet::from_bits(std::uint16_t bits) {
  MarkSet s;
  s.bits_ = bits & ((1u << kNumMarks) - 1);
  return s;
}

bool MarkSet::contains(char32_t cp) const {
  const int i = mark_index(cp);
  return i >= 0 && (bits_ >> i) & 1u;
}

void MarkSet::insert(char32_t cp) {
  const int i = mark_index(cp);
  if (i < 0) throw Error(ErrorCode::UnsupportedMark, describe(cp));
  bits_ |= static_cast<std::uint16_t>(1u << i);
}

void MarkSet::erase(char32_t cp) {
  const int i = mark_index(cp);
  if (i >= 0) bits_ &= static_cast<std::uint16_t>(~(1u << i));
}

int MarkSet::size() const { return std::popcount(bits_); }

std::vector<char32_t> MarkSet::marks() const {
  std::vector<char32_t> out;
  for (int i = 0; i < kNumMarks; ++i)
    if ((bits_ >> i) & 1u) out.push_back(kMarkInventory[i]);
  return out;
}

std::optional<char32_t> MarkSet::vowel() const {
  for (int i = 0; i < kNumMarks; ++i)
    if ((bits_ >> i) & 1u && is_vowel_mark(kMarkInventory[i]))
      return kMarkInventory[i];
  return std::nullopt;
}

void validate_cluster(const LetterCluster& cluster) {
  if (!unicode::is_hebrew_letter(cluster.base))
    throw Error(ErrorCode::InvalidBase, describe(cluster.base));
  int vowels = 0;
  for (char32_t m : cluster.marks.marks())
    if (is_vowel_mark(m)) ++vowels;
  if (vowels > 1)
    throw Error(ErrorCode::InvalidCluster,
                "more than one vowel on " + describe(cluster.base));
  const bool shin_dot = cluster.marks.contains(mark::kShinDot);
  const bool sin_dot = cluster.marks.contains(mark::kSinDot);
  if (shin_dot && sin_dot)
    throw Error(ErrorCode::InvalidCluster, "shin and sin dot together");
  if ((shin_dot || sin_dot) && cluster.base != kShin)
    throw Error(ErrorCode::InvalidCluster,
                "shin/sin dot on " + describe(cluster.base));
}

DiacritizedWord parse_word(std::u32string_view text, ParseOptions options) {
  const std::u32string normalized = unicode::decompose(text);
  DiacritizedWord word;
  for (char32_t c : normalized) {
    if (c == mark::kHolamHaserForVav) c = mark::kHolam;
    if (unicode::is_hebrew_letter(c)) {
      word.clusters.push_back({c, {}});
    } else if (is_inventory_mark(c)) {
      if (word.clusters.empty())
        throw Error(ErrorCode::OrphanMark, describe(c) + " before any letter");
      word.clusters.back().marks.insert(c);
    } else if (unicode::is_combining(c)) {
      if (options.strict) throw Error(ErrorCode::UnsupportedMark, describe(c));
    } else if (unicode::is_word_internal_punct(c)) {
      continue;
    } else {
      throw Error(ErrorCode::InvalidBase, describe(c));
    }
  }
  if (word.clusters.empty()) throw Error(ErrorCode::EmptyInput, "no Hebrew letter");
  for (const auto& cluster : word.clusters) validate_cluster(cluster);
  return word;
}

DiacritizedWord parse_word(std::string_view utf8, ParseOptions options) {
  return parse_word(std::u32string_view(unicode::decode_utf8(utf8)), options);
}

std::u32string strip(const DiacritizedWord& word) {
  std::u32string out;
  out.reserve(word.size());
  for (const auto& cluster : word.clusters) out.push_back(cluster.base);
  return out;
}

DiacritizationPattern extract_pattern(const DiacritizedWord& word) {
  DiacritizationPattern pattern;
  pattern.slots.reserve(word.size());
  for (const auto& cluster : word.clusters) pattern.slots.push_back(cluster.marks);
  return pattern;
}

DiacritizedWord apply_pattern(std::u32string_view undiacritized,
                              const DiacritizationPattern& pattern) {
  if (undiacritized.size() != pattern.size())
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(undiacritized.size()) + " letters vs " +
                    std::to_string(pattern.size()) + " slots");
  DiacritizedWord word;
  word.clusters.reserve(pattern.size());
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const char32_t base = undiacritized[i];
    if (!unicode::is_hebrew_letter(base))
      throw Error(ErrorCode::InvalidBase, describe(base));
    MarkSet marks = pattern.slots[i];
    if (base != kShin) {
      marks.erase(mark::kShinDot);
      marks.erase(mark::kSinDot);
    }
    word.clusters.push_back({base, marks});
  }
  return word;
}

std::u32string to_text(const DiacritizedWord& word) {
  std::u32string out;
  for (const auto& cluster : word.clusters) {
    out.push_back(cluster.base);
    for (char32_t m : cluster.marks.marks()) out.push_back(m);
  }
  return out;
}

std::string to_utf8(const DiacritizedWord& word) {
  return unicode::encode_utf8(to_text(word));
}

std::u32string letters_of(std::u32string_view text) {
  std::u32string out;
  for (char32_t c : unicode::decompose(text))
    if (unicode::is_hebrew_letter(c)) out.push_back(c);
  return out;
}

std::string pattern_to_string(const DiacritizationPattern& pattern) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (i > 0) out.push_back('|');
    const auto marks = pattern.slots[i].marks();
    if (marks.empty()) {
      out.push_back('-');
      continue;
    }
    for (std::size_t j = 0; j < marks.size(); ++j) {
      if (j > 0) out.push_back('+');
      out += hex4(marks[j]);
    }
  }
  return out;
}

DiacritizationPattern pattern_from_string(std::string_view text) {
  DiacritizationPattern pattern;
  if (text.empty()) throw Error(ErrorCode::FormatError, "empty pattern");
  std::size_t start = 0;
  while (true) {
    const std::size_t bar = text.find('|', start);
    const std::string_view slot_text =
        text.substr(start, bar == std::string_view::npos ? text.npos : bar - start);
    MarkSet slot;
    if (slot_text != "-") {
      std::size_t s = 0;
      while (true) {
        const std::size_t plus = slot_text.find('+', s);
        const std::string_view hex = slot_text.substr(
            s, plus == std::string_view::npos ? slot_text.npos : plus - s);
        if (hex.size() != 4)
          throw Error(ErrorCode::FormatError, "bad mark '" + std::string(hex) + "'");
        char32_t cp = 0;
        for (char h : hex) {
          cp <<= 4;
          if (h >= '0' && h <= '9') cp |= static_cast<char32_t>(h - '0');
          else if (h >= 'A' && h <= 'F') cp |= static_cast<char32_t>(h - 'A' + 10);
          else throw Error(ErrorCode::FormatError, "bad hex '" + std::string(hex) + "'");
        }
        if (!is_inventory_mark(cp))
          throw Error(ErrorCode::FormatError, "mark outside inventory " + describe(cp));
        slot.insert(cp);
        if (plus == std::string_view::npos) break;
        s = plus + 1;
      }
    }
    pattern.slots.push_back(slot);
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return pattern;
}

}  // namespace divrit
