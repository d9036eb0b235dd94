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

// Letter clusters and diacritization patterns.
//
// A word is a sequence of (base letter, mark set) clusters in logical order.
// Its pattern is the same sequence with the base letters removed; patterns
// transfer between any two words of equal letter count.
//
// The mark inventory is closed: sheva, the hataf vowels, the full vowels,
// dagesh/mapiq, shin/sin dots and qamats qatan. Holam haser for vav (U+05BA)
// is folded into holam on input, so it never appears in a MarkSet. Meteg,
// rafe and cantillation are dropped in lenient mode and rejected in strict
// mode.

#ifndef DIVRIT_NIQQUD_HPP_
#define DIVRIT_NIQQUD_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace divrit {

namespace mark {
inline constexpr char32_t kSheva = U'\u05B0';
inline constexpr char32_t kHatafSegol = U'\u05B1';
inline constexpr char32_t kHatafPatah = U'\u05B2';
inline constexpr char32_t kHatafQamats = U'\u05B3';
inline constexpr char32_t kHiriq = U'\u05B4';
inline constexpr char32_t kTsere = U'\u05B5';
inline constexpr char32_t kSegol = U'\u05B6';
inline constexpr char32_t kPatah = U'\u05B7';
inline constexpr char32_t kQamats = U'\u05B8';
inline constexpr char32_t kHolam = U'\u05B9';
inline constexpr char32_t kHolamHaserForVav = U'\u05BA';
inline constexpr char32_t kQubuts = U'\u05BB';
inline constexpr char32_t kDagesh = U'\u05BC';
inline constexpr char32_t kShinDot = U'\u05C1';
inline constexpr char32_t kSinDot = U'\u05C2';
inline constexpr char32_t kQamatsQatan = U'\u05C7';
}  // namespace mark

inline constexpr char32_t kShin = U'\u05E9';

// Inventory in ascending codepoint order; the index is the bit position in a
// MarkSet and the row of the auxiliary prediction heads.
inline constexpr std::array<char32_t, 15> kMarkInventory = {
    mark::kSheva,  mark::kHatafSegol, mark::kHatafPatah, mark::kHatafQamats,
    mark::kHiriq,  mark::kTsere,      mark::kSegol,      mark::kPatah,
    mark::kQamats, mark::kHolam,      mark::kQubuts,     mark::kDagesh,
    mark::kShinDot, mark::kSinDot,    mark::kQamatsQatan};
inline constexpr int kNumMarks = static_cast<int>(kMarkInventory.size());

// Index into kMarkInventory, or -1 for anything outside the inventory.
int mark_index(char32_t cp);
bool is_inventory_mark(char32_t cp);
bool is_vowel_mark(char32_t cp);

class MarkSet {
 public:
  constexpr MarkSet() = default;

  static MarkSet from_bits(std::uint16_t bits);

  bool contains(char32_t cp) const;
  void insert(char32_t cp);
  void erase(char32_t cp);
  bool empty() const { return bits_ == 0; }
  int size() const;
  std::uint16_t bits() const { return bits_; }

  // Marks in canonical (ascending codepoint) order.
  std::vector<char32_t> marks() const;
  // The single vowel-class mark, if any. Assumes a valid cluster.
  std::optional<char32_t> vowel() const;

  friend bool operator==(MarkSet, MarkSet) = default;

 private:
  std::uint16_t bits_ = 0;
};

struct LetterCluster {
  char32_t base = 0;
  MarkSet marks;

  friend bool operator==(const LetterCluster&, const LetterCluster&) = default;
};

struct DiacritizedWord {
  std::vector<LetterCluster> clusters;

  std::size_t size() const { return clusters.size(); }
  friend bool operator==(const DiacritizedWord&, const DiacritizedWord&) = default;
};

struct DiacritizationPattern {
  std::vector<MarkSet> slots;

  std::size_t size() const { return slots.size(); }
  friend bool operator==(const DiacritizationPattern&,
                         const DiacritizationPattern&) = default;
};

struct ParseOptions {
  // Reject meteg, rafe, cantillation and foreign combining marks instead of
  // dropping them.
  bool strict = false;
};

// Throws divrit::Error (EmptyInput, OrphanMark, UnsupportedMark,
// InvalidCluster, InvalidBase). Word-internal geresh/gershayim are skipped.
DiacritizedWord parse_word(std::u32string_view text, ParseOptions options = {});
DiacritizedWord parse_word(std::string_view utf8, ParseOptions options = {});

std::u32string strip(const DiacritizedWord& word);
DiacritizationPattern extract_pattern(const DiacritizedWord& word);

// Shin/sin dots landing on a base other than shin are dropped.
// Throws LengthMismatch or InvalidBase.
DiacritizedWord apply_pattern(std::u32string_view undiacritized,
                              const DiacritizationPattern& pattern);

std::u32string to_text(const DiacritizedWord& word);
std::string to_utf8(const DiacritizedWord& word);

// Base letters of a raw token with every combining mark and word-internal
// punctuation removed.
std::u32string letters_of(std::u32string_view text);

// Checks the per-cluster mark compatibility rules; throws InvalidCluster.
void validate_cluster(const LetterCluster& cluster);

// Lexicon pattern encoding: slots joined by '|', each slot the 4-digit
// uppercase hex codepoints joined by '+', an empty slot written '-'.
std::string pattern_to_string(const DiacritizationPattern& pattern);
DiacritizationPattern pattern_from_string(std::string_view text);

}  // namespace divrit

#endif  // DIVRIT_NIQQUD_HPP_
