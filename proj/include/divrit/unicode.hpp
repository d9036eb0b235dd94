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

// UTF-8 transcoding and the handful of Hebrew-block character classes the
// rest of the toolkit needs. Internally all text is UTF-32.

#ifndef DIVRIT_UNICODE_HPP_
#define DIVRIT_UNICODE_HPP_

#include <string>
#include <string_view>

namespace divrit::unicode {

// Invalid sequences decode to U+FFFD.
std::u32string decode_utf8(std::string_view bytes);
std::string encode_utf8(std::u32string_view text);
std::string encode_utf8(char32_t cp);

inline constexpr bool is_hebrew_letter(char32_t c) {
  return c >= U'\u05D0' && c <= U'\u05EA';
}

// Combining marks of the Hebrew block (cantillation, points, meteg, rafe,
// upper/lower dots). Excludes the punctuation interleaved in that range.
inline constexpr bool is_hebrew_mark(char32_t c) {
  if (c < U'\u0591' || c > U'\u05C7') return false;
  return c != U'\u05BE' && c != U'\u05C0' && c != U'\u05C3' &&
         c != U'\u05C6';
}

inline constexpr bool is_generic_combining(char32_t c) {
  return (c >= 0x0300 && c <= 0x036F) || (c >= 0x1AB0 && c <= 0x1AFF) ||
         (c >= 0x1DC0 && c <= 0x1DFF) || (c >= 0x20D0 && c <= 0x20FF) ||
         (c >= 0xFE20 && c <= 0xFE2F);
}

inline constexpr bool is_combining(char32_t c) {
  return is_hebrew_mark(c) || is_generic_combining(c);
}

// Geresh, gershayim and their ASCII stand-ins; kept inside a Hebrew token
// when surrounded by Hebrew material.
inline constexpr bool is_word_internal_punct(char32_t c) {
  return c == U'\u05F3' || c == U'\u05F4' || c == U'\'' || c == U'"';
}

bool is_space(char32_t c);
inline constexpr bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }
inline constexpr bool is_latin_letter(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z');
}

// Canonical decomposition of the Hebrew presentation forms (U+FB1D..U+FB4E);
// every other scalar passes through unchanged.
std::u32string decompose(std::u32string_view text);

}  // namespace divrit::unicode

#endif  // DIVRIT_UNICODE_HPP_
