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

// Fixed-geometry rasterization of Hebrew text into 16x16 patches.
//
// Every letter cluster gets one cell of advance_width x cell_height pixels;
// marks are zero-advance overlays inside their letter's cell, so a word and
// its stripped skeleton always produce images of the same size. Background
// is 1.0, ink is 0.0. Text is laid out in logical order left to right; the
// mirror flag flips the finished raster horizontally.

#ifndef DIVRIT_RENDER_HPP_
#define DIVRIT_RENDER_HPP_

#include <Eigen/Core>
#include <array>
#include <bitset>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include "divrit/niqqud.hpp"

namespace divrit {

inline constexpr int kPatchSize = 16;
inline constexpr int kPatchDim = kPatchSize * kPatchSize;
inline constexpr int kMaxPatches = 529;

using PixelMatrix = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
// One column per patch, kPatchDim rows.
using PatchMatrix = Eigen::MatrixXf;

// A 16x16 one-bit bitmap, row-major, bit set = ink.
using GlyphBitmap = std::bitset<kPatchDim>;

// Source of glyph bitmaps. Implementations must be deterministic and
// immutable once constructed.
class GlyphProvider {
 public:
  virtual ~GlyphProvider() = default;
  virtual std::string id() const = 0;
  virtual bool has_letter(char32_t c) const = 0;
  virtual GlyphBitmap letter(char32_t c) const = 0;
  // Overlay for one inventory mark, drawn on top of the letter cell.
  virtual GlyphBitmap mark(char32_t m) const = 0;
  // Pixels the mark clears before inking; lets a mark on a dense glyph still
  // change the cell.
  virtual GlyphBitmap mark_clear(char32_t m) const = 0;
  virtual GlyphBitmap replacement() const = 0;
};

// The embedded face: block letters in rows 3..11, vowels below (rows
// 12..15), dagesh centred, holam and the shin/sin dots on the top rows.
class BitmapFace final : public GlyphProvider {
 public:
  BitmapFace();
  std::string id() const override { return "divrit-bitmap-16"; }
  bool has_letter(char32_t c) const override;
  GlyphBitmap letter(char32_t c) const override;
  GlyphBitmap mark(char32_t m) const override;
  GlyphBitmap mark_clear(char32_t m) const override;
  GlyphBitmap replacement() const override;

 private:
  std::array<GlyphBitmap, 27> letters_;
  std::array<GlyphBitmap, kNumMarks> marks_;
  std::array<GlyphBitmap, kNumMarks> clears_;
  GlyphBitmap replacement_;
};

const GlyphProvider& default_glyph_provider();

struct RenderConfig {
  int cell_height = kPatchSize;
  int advance_width = kPatchSize;
  int max_patches = kMaxPatches;
  bool mirror = false;
  bool strict = false;  // MissingGlyph instead of the replacement box
  std::string glyph_source = "divrit-bitmap-16";

  // Throws ConfigError.
  void validate() const;
  friend bool operator==(const RenderConfig&, const RenderConfig&) = default;
};

struct RenderedImage {
  PixelMatrix pixels;
  PatchMatrix patches;
  // Digits or Latin letters were present; their direction is not resolved.
  bool mixed_direction = false;
  // render_sentence dropped cells past max_patches.
  bool truncated = false;

  int height() const { return static_cast<int>(pixels.rows()); }
  int width() const { return static_cast<int>(pixels.cols()); }
};

// Throws TooWide, MissingGlyph (strict), OrphanMark, ConfigError.
RenderedImage render_text(std::u32string_view text, const RenderConfig& config = {},
                          const GlyphProvider& glyphs = default_glyph_provider());
RenderedImage render_word(const DiacritizedWord& word, const RenderConfig& config = {},
                          const GlyphProvider& glyphs = default_glyph_provider());
// Like render_text but truncates at max_patches and sets `truncated`.
RenderedImage render_sentence(std::u32string_view text, const RenderConfig& config = {},
                              const GlyphProvider& glyphs = default_glyph_provider());

RenderedImage mirror_rtl(const RenderedImage& image);
PatchMatrix patchify(const PixelMatrix& pixels);
PixelMatrix unpatchify(const PatchMatrix& patches, int height, int width);

// Binary PGM (P5), 0 = ink.
void write_pgm(std::ostream& out, const PixelMatrix& pixels);

}  // namespace divrit

#endif  // DIVRIT_RENDER_HPP_
