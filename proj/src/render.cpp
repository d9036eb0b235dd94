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

#include "divrit/render.hpp"

#include <algorithm>
#include <ostream>
#include <vector>

#include "divrit/error.hpp"
#include "divrit/unicode.hpp"

namespace divrit {

namespace {

// Letter art: 9 rows x 12 columns, placed at rows 3..11, columns 2..13 of the
// cell. Drawn in reading orientation, alef through tav.
constexpr int kArtRows = 9;
constexpr int kArtCols = 12;
constexpr int kArtTop = 3;
constexpr int kArtLeft = 2;

constexpr const char* kLetterArt[27][kArtRows] = {
    {"##.......##.", ".##......##.", "..##....##..", "...##..##...", "....####....",
     "...##.##....", "..##...##...", ".##.....##..", "##.......##."},  // alef
    {"#########...", "........#...", "........#...", "........#...", "........#...",
     "........#...", "........#...", "........#...", "###########."},  // bet
    {".....####...", "........#...", "........#...", "........#...", "........#...",
     ".......##...", "......#.#...", ".....#..#...", "....#...#..."},  // gimel
    {"###########.", "........#...", "........#...", "........#...", "........#...",
     "........#...", "........#...", "........#...", "........#..."},  // dalet
    {"##########..", ".........#..", ".........#..", ".........#..", ".#.......#..",
     ".#.......#..", ".#.......#..", ".#.......#..", ".#.......#.."},  // he
    {"....####....", ".......#....", ".......#....", ".......#....", ".......#....",
     ".......#....", ".......#....", ".......#....", ".......#...."},  // vav
    {"..########..", "......#.....", "......#.....", "......#.....", "......#.....",
     "......#.....", "......#.....", "......#.....", "......#....."},  // zayin
    {"##########..", ".#.......#..", ".#.......#..", ".#.......#..", ".#.......#..",
     ".#.......#..", ".#.......#..", ".#.......#..", ".#.......#.."},  // het
    {"#....####...", "#...#....#..", "#...#....#..", "#....#...#..", "#........#..",
     "#........#..", "#........#..", "#........#..", "#########..."},  // tet
    {"...#####....", ".......#....", ".......#....", "......#.....", "............",
     "............", "............", "............", "............"},  // yod
    {".########...", "#.......#...", "........#...", "........#...", "........#...",
     "........#...", "........#...", "........#...", "........#..."},  // final kaf
    {"########....", "........#...", "........#...", "........#...", "........#...",
     "........#...", "........#...", "........#...", "########...."},  // kaf
    {"#...........", "#...........", "#...........", "##########..", ".........#..",
     "........#...", ".......#....", "......#.....", ".....#......"},  // lamed
    {"##########..", "#........#..", "#........#..", "#........#..", "#........#..",
     "#........#..", "#........#..", "#........#..", "##########.."},  // final mem
    {"#...######..", ".#.#.....#..", "..#......#..", ".#.......#..", "#........#..",
     "#........#..", "#........#..", "#........#..", "#...######.."},  // mem
    {"......###...", "........#...", "........#...", "........#...", "........#...",
     "........#...", "........#...", "........#...", "........#..."},  // final nun
    {".....###....", ".......#....", ".......#....", ".......#....", ".......#....",
     ".......#....", ".......#....", ".......#....", ".#######...."},  // nun
    {"##########..", "#........#..", "#........#..", "#........#..", "#........#..",
     "#........#..", ".#......#...", "..#....#....", "...####....."},  // samekh
    {"#.......#...", ".#.......#..", "..#......#..", "...#.....#..", "....#...#...",
     ".....#.#....", "......#.....", ".....#......", "#####......."},  // ayin
    {"#########...", "#.......#...", ".####...#...", "........#...", "........#...",
     "........#...", "........#...", "........#...", "........#..."},  // final pe
    {"#########...", "#.......#...", ".####...#...", "........#...", "........#...",
     "........#...", "........#...", "........#...", "#########..."},  // pe
    {"#.......#...", ".#......#...", "..#....#....", "...#..#.....", "....##......",
     "....#.......", "....#.......", "....#.......", "....#......."},  // final tsadi
    {"#.......#...", ".#......#...", "..#....#....", "...#..#.....", "....##......",
     ".....#......", "......#.....", ".......#....", "#########..."},  // tsadi
    {"##########..", ".........#..", ".........#..", ".#.......#..", ".#......#...",
     ".#..........", ".#..........", ".#..........", ".#.........."},  // qof
    {"#########...", "........#...", "........#...", "........#...", "........#...",
     "........#...", "........#...", "........#...", "........#..."},  // resh
    {"#....#....#.", "#....#....#.", "#....#....#.", "#....#....#.", "#....#...#..",
     "#...#...#...", ".#.#...#....", "..#...#.....", ".#######...."},  // shin
    {"##########..", ".#.......#..", ".#.......#..", ".#.......#..", ".#.......#..",
     ".#.......#..", ".#.......#..", ".#.......#..", "##.......#.."},  // tav
};

// Mark art: full 16-column rows at a given top row.
struct MarkArt {
  char32_t mark;
  int top;
  std::vector<const char*> rows;
};

const std::vector<MarkArt>& mark_art() {
  static const std::vector<MarkArt> art = {
      {mark::kSheva, 12, {".......##.......", "................", ".......##......."}},
      {mark::kHatafSegol, 12, {"..##..##....##..", "................", ".....##.....##.."}},
      {mark::kHatafPatah, 12, {"............##..", "..#######.......", "............##.."}},
      {mark::kHatafQamats, 12, {"..#######...##..", ".....##.........", ".....##.....##.."}},
      {mark::kHiriq, 13, {".......##......."}},
      {mark::kTsere, 13, {"....##....##...."}},
      {mark::kSegol, 12, {"....##....##....", "................", ".......##......."}},
      {mark::kPatah, 13, {"....########...."}},
      {mark::kQamats, 12, {"....########....", ".......##.......", ".......##......."}},
      {mark::kHolam, 0, {"......##........", "......##........"}},
      {mark::kQubuts, 12, {"....##..........", ".......##.......", "..........##...."}},
      {mark::kDagesh, 7, {".......##.......", ".......##......."}},
      {mark::kShinDot, 0, {".............##.", ".............##."}},
      {mark::kSinDot, 0, {".##.............", ".##............."}},
      {mark::kQamatsQatan, 12, {"....########....", ".......##.......", ".......##.......",
                                ".......##......."}},
  };
  return art;
}

GlyphBitmap bitmap_from_rows(int top, int left, const std::vector<const char*>& rows) {
  GlyphBitmap bits;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string_view row(rows[r]);
    for (std::size_t c = 0; c < row.size(); ++c) {
      const int y = top + static_cast<int>(r);
      const int x = left + static_cast<int>(c);
      if (row[c] == '#' && y < kPatchSize && x < kPatchSize)
        bits.set(static_cast<std::size_t>(y * kPatchSize + x));
    }
  }
  return bits;
}

GlyphBitmap rect(int top, int left, int bottom, int right) {
  GlyphBitmap bits;
  for (int y = top; y <= bottom; ++y)
    for (int x = left; x <= right; ++x) bits.set(static_cast<std::size_t>(y * kPatchSize + x));
  return bits;
}

}  // namespace

BitmapFace::BitmapFace() {
  for (int i = 0; i < 27; ++i) {
    std::vector<const char*> rows(kLetterArt[i], kLetterArt[i] + kArtRows);
    letters_[static_cast<std::size_t>(i)] = bitmap_from_rows(kArtTop, kArtLeft, rows);
  }
  for (const MarkArt& art : mark_art()) {
    const auto idx = static_cast<std::size_t>(mark_index(art.mark));
    marks_[idx] = bitmap_from_rows(art.top, 0, art.rows);
  }
  // The dagesh sits inside the letter body: a 4x4 window is cleared and the
  // centre 2x2 inked, so the dot survives on any letter.
  clears_[static_cast<std::size_t>(mark_index(mark::kDagesh))] = rect(6, 6, 9, 9);
  // Box with a diagonal, in the letter area.
  replacement_ = rect(kArtTop, kArtLeft, kArtTop + kArtRows - 1, kArtLeft + kArtCols - 1) &
                 ~rect(kArtTop + 1, kArtLeft + 1, kArtTop + kArtRows - 2, kArtLeft + kArtCols - 2);
  for (int i = 0; i < kArtRows; ++i)
    replacement_.set(static_cast<std::size_t>((kArtTop + i) * kPatchSize + kArtLeft + i));
}

bool BitmapFace::has_letter(char32_t c) const { return unicode::is_hebrew_letter(c); }

GlyphBitmap BitmapFace::letter(char32_t c) const {
  if (!has_letter(c)) throw Error(ErrorCode::MissingGlyph, "no glyph");
  return letters_[static_cast<std::size_t>(c - U'\u05D0')];
}

GlyphBitmap BitmapFace::mark(char32_t m) const {
  const int i = mark_index(m);
  if (i < 0) throw Error(ErrorCode::MissingGlyph, "no mark glyph");
  return marks_[static_cast<std::size_t>(i)];
}

GlyphBitmap BitmapFace::mark_clear(char32_t m) const {
  const int i = mark_index(m);
  if (i < 0) throw Error(ErrorCode::MissingGlyph, "no mark glyph");
  return clears_[static_cast<std::size_t>(i)];
}

GlyphBitmap BitmapFace::replacement() const { return replacement_; }

const GlyphProvider& default_glyph_provider() {
  static const BitmapFace face;
  return face;
}

void RenderConfig::validate() const {
  if (cell_height <= 0 || cell_height % kPatchSize != 0)
    throw Error(ErrorCode::ConfigError, "cell_height must be a positive multiple of 16");
  if (advance_width <= 0 || advance_width % kPatchSize != 0)
    throw Error(ErrorCode::ConfigError, "advance_width must be a positive multiple of 16");
  if (max_patches <= 0) throw Error(ErrorCode::ConfigError, "max_patches must be positive");
}

namespace {

enum class CellKind { Letter, Blank, Replacement };

struct Cell {
  CellKind kind = CellKind::Blank;
  char32_t base = 0;
  MarkSet marks;
};

std::vector<Cell> layout(std::u32string_view text, const RenderConfig& config,
                         const GlyphProvider& glyphs, bool& mixed) {
  std::vector<Cell> cells;
  mixed = false;
  for (char32_t c : unicode::decompose(text)) {
    if (c == mark::kHolamHaserForVav) c = mark::kHolam;
    if (unicode::is_hebrew_letter(c)) {
      if (!glyphs.has_letter(c)) {
        if (config.strict) throw Error(ErrorCode::MissingGlyph, unicode::encode_utf8(c));
        cells.push_back({CellKind::Replacement, c, {}});
      } else {
        cells.push_back({CellKind::Letter, c, {}});
      }
    } else if (is_inventory_mark(c)) {
      if (cells.empty() || cells.back().kind != CellKind::Letter)
        throw Error(ErrorCode::OrphanMark, "mark without a letter");
      cells.back().marks.insert(c);
    } else if (unicode::is_combining(c)) {
      continue;
    } else if (unicode::is_space(c)) {
      cells.push_back({CellKind::Blank, c, {}});
    } else {
      if (unicode::is_digit(c) || unicode::is_latin_letter(c)) mixed = true;
      if (config.strict) throw Error(ErrorCode::MissingGlyph, unicode::encode_utf8(c));
      cells.push_back({CellKind::Replacement, c, {}});
    }
  }
  return cells;
}

GlyphBitmap cell_bitmap(const Cell& cell, const GlyphProvider& glyphs) {
  switch (cell.kind) {
    case CellKind::Blank:
      return {};
    case CellKind::Replacement:
      return glyphs.replacement();
    case CellKind::Letter:
      break;
  }
  GlyphBitmap bits = glyphs.letter(cell.base);
  for (char32_t m : cell.marks.marks()) {
    bits &= ~glyphs.mark_clear(m);
    bits |= glyphs.mark(m);
  }
  return bits;
}

RenderedImage rasterize(const std::vector<Cell>& cells, const RenderConfig& config,
                        const GlyphProvider& glyphs) {
  const int sy = config.cell_height / kPatchSize;
  const int sx = config.advance_width / kPatchSize;
  const int n = static_cast<int>(cells.size());
  RenderedImage image;
  image.pixels = PixelMatrix::Ones(config.cell_height, n * config.advance_width);
  for (int i = 0; i < n; ++i) {
    const GlyphBitmap bits = cell_bitmap(cells[static_cast<std::size_t>(i)], glyphs);
    const int x0 = i * config.advance_width;
    for (int y = 0; y < config.cell_height; ++y)
      for (int x = 0; x < config.advance_width; ++x)
        if (bits.test(static_cast<std::size_t>((y / sy) * kPatchSize + x / sx)))
          image.pixels(y, x0 + x) = 0.0f;
  }
  if (config.mirror) image.pixels = image.pixels.rowwise().reverse().eval();
  image.patches = patchify(image.pixels);
  return image;
}

int patches_per_cell(const RenderConfig& config) {
  return (config.cell_height / kPatchSize) * (config.advance_width / kPatchSize);
}

}  // namespace

RenderedImage render_text(std::u32string_view text, const RenderConfig& config,
                          const GlyphProvider& glyphs) {
  config.validate();
  bool mixed = false;
  const std::vector<Cell> cells = layout(text, config, glyphs, mixed);
  if (cells.empty()) throw Error(ErrorCode::EmptyInput, "nothing to render");
  const long patches = static_cast<long>(cells.size()) * patches_per_cell(config);
  if (patches > config.max_patches)
    throw Error(ErrorCode::TooWide, std::to_string(patches) + " patches exceeds " +
                                        std::to_string(config.max_patches));
  RenderedImage image = rasterize(cells, config, glyphs);
  image.mixed_direction = mixed;
  return image;
}

RenderedImage render_word(const DiacritizedWord& word, const RenderConfig& config,
                          const GlyphProvider& glyphs) {
  return render_text(to_text(word), config, glyphs);
}

RenderedImage render_sentence(std::u32string_view text, const RenderConfig& config,
                              const GlyphProvider& glyphs) {
  config.validate();
  bool mixed = false;
  std::vector<Cell> cells = layout(text, config, glyphs, mixed);
  if (cells.empty()) throw Error(ErrorCode::EmptyInput, "nothing to render");
  const auto max_cells =
      static_cast<std::size_t>(config.max_patches / patches_per_cell(config));
  bool truncated = false;
  if (cells.size() > max_cells) {
    cells.resize(max_cells);
    truncated = true;
  }
  RenderedImage image = rasterize(cells, config, glyphs);
  image.mixed_direction = mixed;
  image.truncated = truncated;
  return image;
}

RenderedImage mirror_rtl(const RenderedImage& image) {
  RenderedImage out = image;
  out.pixels = image.pixels.rowwise().reverse().eval();
  out.patches = patchify(out.pixels);
  return out;
}

PatchMatrix patchify(const PixelMatrix& pixels) {
  if (pixels.rows() % kPatchSize != 0 || pixels.cols() % kPatchSize != 0)
    throw Error(ErrorCode::ShapeMismatch, "image dimensions must be multiples of 16");
  const Eigen::Index rows = pixels.rows() / kPatchSize;
  const Eigen::Index cols = pixels.cols() / kPatchSize;
  PatchMatrix patches(kPatchDim, rows * cols);
  for (Eigen::Index pr = 0; pr < rows; ++pr)
    for (Eigen::Index pc = 0; pc < cols; ++pc) {
      const Eigen::Index p = pr * cols + pc;
      for (int y = 0; y < kPatchSize; ++y)
        for (int x = 0; x < kPatchSize; ++x)
          patches(y * kPatchSize + x, p) = pixels(pr * kPatchSize + y, pc * kPatchSize + x);
    }
  return patches;
}

PixelMatrix unpatchify(const PatchMatrix& patches, int height, int width) {
  if (height % kPatchSize != 0 || width % kPatchSize != 0 || patches.rows() != kPatchDim ||
      patches.cols() != static_cast<Eigen::Index>(height / kPatchSize) * (width / kPatchSize))
    throw Error(ErrorCode::ShapeMismatch, "patch count does not match dimensions");
  const int cols = width / kPatchSize;
  PixelMatrix pixels(height, width);
  for (Eigen::Index p = 0; p < patches.cols(); ++p) {
    const Eigen::Index pr = p / cols;
    const Eigen::Index pc = p % cols;
    for (int y = 0; y < kPatchSize; ++y)
      for (int x = 0; x < kPatchSize; ++x)
        pixels(pr * kPatchSize + y, pc * kPatchSize + x) = patches(y * kPatchSize + x, p);
  }
  return pixels;
}

void write_pgm(std::ostream& out, const PixelMatrix& pixels) {
  out << "P5\n" << pixels.cols() << ' ' << pixels.rows() << "\n255\n";
  for (Eigen::Index y = 0; y < pixels.rows(); ++y)
    for (Eigen::Index x = 0; x < pixels.cols(); ++x) {
      const float v = std::clamp(pixels(y, x), 0.0f, 1.0f);
      out.put(static_cast<char>(static_cast<unsigned char>(v * 255.0f + 0.5f)));
    }
}

}  // namespace divrit
