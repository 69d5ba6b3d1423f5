#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "corruption_impl.hpp"

namespace robench::detail {

namespace {

// Tiny built-in 8x8 uppercase bitmap font (rows top to bottom, bit n of a
// row = pixel at column n). Only A-Z and space are needed for the overlays.
constexpr std::uint8_t kFont8x8[26][8] = {
    {0x0C, 0x1E, 0x33, 0x33, 0x3F, 0x33, 0x33, 0x00},  // A
    {0x3F, 0x66, 0x66, 0x3E, 0x66, 0x66, 0x3F, 0x00},  // B
    {0x3C, 0x66, 0x03, 0x03, 0x03, 0x66, 0x3C, 0x00},  // C
    {0x1F, 0x36, 0x66, 0x66, 0x66, 0x36, 0x1F, 0x00},  // D
    {0x7F, 0x46, 0x16, 0x1E, 0x16, 0x46, 0x7F, 0x00},  // E
    {0x7F, 0x46, 0x16, 0x1E, 0x16, 0x06, 0x0F, 0x00},  // F
    {0x3C, 0x66, 0x03, 0x03, 0x73, 0x66, 0x7C, 0x00},  // G
    {0x33, 0x33, 0x33, 0x3F, 0x33, 0x33, 0x33, 0x00},  // H
    {0x1E, 0x0C, 0x0C, 0x0C, 0x0C, 0x0C, 0x1E, 0x00},  // I
    {0x78, 0x30, 0x30, 0x30, 0x33, 0x33, 0x1E, 0x00},  // J
    {0x67, 0x66, 0x36, 0x1E, 0x36, 0x66, 0x67, 0x00},  // K
    {0x0F, 0x06, 0x06, 0x06, 0x46, 0x66, 0x7F, 0x00},  // L
    {0x63, 0x77, 0x7F, 0x7F, 0x6B, 0x63, 0x63, 0x00},  // M
    {0x63, 0x67, 0x6F, 0x7B, 0x73, 0x63, 0x63, 0x00},  // N
    {0x1C, 0x36, 0x63, 0x63, 0x63, 0x36, 0x1C, 0x00},  // O
    {0x3F, 0x66, 0x66, 0x3E, 0x06, 0x06, 0x0F, 0x00},  // P
    {0x1E, 0x33, 0x33, 0x33, 0x3B, 0x1E, 0x38, 0x00},  // Q
    {0x3F, 0x66, 0x66, 0x3E, 0x36, 0x66, 0x67, 0x00},  // R
    {0x1E, 0x33, 0x07, 0x0E, 0x38, 0x33, 0x1E, 0x00},  // S
    {0x3F, 0x2D, 0x0C, 0x0C, 0x0C, 0x0C, 0x1E, 0x00},  // T
    {0x33, 0x33, 0x33, 0x33, 0x33, 0x33, 0x3F, 0x00},  // U
    {0x33, 0x33, 0x33, 0x33, 0x33, 0x1E, 0x0C, 0x00},  // V
    {0x63, 0x63, 0x63, 0x6B, 0x7F, 0x77, 0x63, 0x00},  // W
    {0x63, 0x63, 0x36, 0x1C, 0x1C, 0x36, 0x63, 0x00},  // X
    {0x33, 0x33, 0x33, 0x1E, 0x0C, 0x0C, 0x1E, 0x00},  // Y
    {0x7F, 0x63, 0x31, 0x18, 0x0C, 0x66, 0x7F, 0x00},  // Z
};

void fill_rect(Image& img, int x0, int y0, int w, int h, std::uint8_t r, std::uint8_t g,
               std::uint8_t b) {
  const int x1 = std::min(img.width, x0 + w);
  const int y1 = std::min(img.height, y0 + h);
  for (int y = std::max(0, y0); y < y1; ++y) {
    for (int x = std::max(0, x0); x < x1; ++x) {
      img.at(x, y, 0) = r;
      img.at(x, y, 1) = g;
      img.at(x, y, 2) = b;
    }
  }
}

// Renders `text` at integer scale with the pixel callback; glyph cell is
// 8x8 * scale, spaces advance without pixels.
template <class SetPixel>
void draw_text(const std::string& text, int x0, int y0, int scale, SetPixel&& set) {
  int pen = x0;
  for (char ch : text) {
    if (ch >= 'A' && ch <= 'Z') {
      const std::uint8_t* glyph = kFont8x8[ch - 'A'];
      for (int row = 0; row < 8; ++row) {
        for (int col = 0; col < 8; ++col) {
          if (!(glyph[row] & (1u << col))) continue;
          for (int sy = 0; sy < scale; ++sy) {
            for (int sx = 0; sx < scale; ++sx) {
              set(pen + col * scale + sx, y0 + row * scale + sy);
            }
          }
        }
      }
    }
    pen += 8 * scale;
  }
}

int text_width(const std::string& text, int scale) {
  return static_cast<int>(text.size()) * 8 * scale;
}

}  // namespace

// Black rectangles placed until the covered area reaches the ratio. Per
// rectangle: draws x, y, width, height (sides up to a quarter of the image).
Image aug_random_occlusion(const Image& img, double ratio, RngStream& rng) {
  Image out = img;
  std::vector<bool> covered(static_cast<std::size_t>(img.width) * img.height, false);
  const long target = std::lround(ratio * img.width * img.height);
  long done = 0;
  int guard = 0;
  while (done < target && guard < 10000) {
    ++guard;
    const int x = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(img.width)));
    const int y = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(img.height)));
    const int w = 1 + static_cast<int>(rng.next_below(std::max(1, img.width / 4)));
    const int h = 1 + static_cast<int>(rng.next_below(std::max(1, img.height / 4)));
    fill_rect(out, x, y, w, h, 0, 0, 0);
    const int x1 = std::min(img.width, x + w);
    const int y1 = std::min(img.height, y + h);
    for (int yy = y; yy < y1; ++yy) {
      for (int xx = x; xx < x1; ++xx) {
        const std::size_t i = static_cast<std::size_t>(yy) * img.width + xx;
        if (!covered[i]) {
          covered[i] = true;
          ++done;
        }
      }
    }
  }
  return out;
}

// Regular lattice of square cells; a cell is blacked out when the running
// fraction crosses the ratio (evenly spread, no randomness).
Image aug_grid_mask(const Image& img, double ratio, RngStream&) {
  Image out = img;
  const int cell = std::max(2, std::min(img.width, img.height) / 10);
  const int nx = (img.width + cell - 1) / cell;
  const int ny = (img.height + cell - 1) / cell;
  const int n = nx * ny;
  for (int i = 0; i < n; ++i) {
    const bool on =
        static_cast<long>(std::floor((i + 1) * ratio)) > static_cast<long>(std::floor(i * ratio));
    if (!on) continue;
    const int cx = i % nx;
    const int cy = i / nx;
    fill_rect(out, cx * cell, cy * cell, cell, cell, 0, 0, 0);
  }
  return out;
}

// Centered black square of area ratio * W * H.
Image aug_center_occlusion(const Image& img, double ratio, RngStream&) {
  Image out = img;
  int side = static_cast<int>(std::lround(std::sqrt(ratio * img.width * img.height)));
  side = std::min({side, img.width, img.height});
  if (side <= 0) return out;
  const int x0 = (img.width - side) / 2;
  const int y0 = (img.height - side) / 2;
  fill_rect(out, x0, y0, side, side, 0, 0, 0);
  return out;
}

// "SAMPLE TEXT" centered, white with a black outline. Font size = glyph cell
// height in pixels (must stay a multiple of 8 for integer scaling).
Image aug_text_overlay(const Image& img, double fontsize, RngStream&) {
  Image out = img;
  const int scale = std::max(1, static_cast<int>(fontsize) / 8);
  const std::string text = "SAMPLE TEXT";
  const int tw = text_width(text, scale);
  const int th = 8 * scale;
  const int x0 = (img.width - tw) / 2;
  const int y0 = (img.height - th) / 2;
  const int o = std::max(1, scale / 3);
  const auto paint = [&out](int x, int y, std::uint8_t v) {
    if (x < 0 || x >= out.width || y < 0 || y >= out.height) return;
    out.at(x, y, 0) = v;
    out.at(x, y, 1) = v;
    out.at(x, y, 2) = v;
  };
  for (int dy = -o; dy <= o; ++dy) {
    for (int dx = -o; dx <= o; ++dx) {
      if (dx == 0 && dy == 0) continue;
      draw_text(text, x0 + dx, y0 + dy, scale, [&](int x, int y) { paint(x, y, 0); });
    }
  }
  draw_text(text, x0, y0, scale, [&](int x, int y) { paint(x, y, 255); });
  return out;
}

// "WATERMARK" tiled on a diagonal drift at 40% opacity.
Image aug_watermark(const Image& img, double fontsize, RngStream&) {
  Image out = img;
  const int scale = std::max(1, static_cast<int>(fontsize) / 8);
  const std::string text = "WATERMARK";
  const int tw = text_width(text, scale);
  const int th = 8 * scale;
  const int step_x = tw + 2 * th;
  const auto blend = [&out](int x, int y) {
    if (x < 0 || x >= out.width || y < 0 || y >= out.height) return;
    for (int c = 0; c < 3; ++c) {
      const int v = static_cast<int>(std::lround(0.6 * out.at(x, y, c) + 0.4 * 255.0));
      out.at(x, y, c) = static_cast<std::uint8_t>(v > 255 ? 255 : v);
    }
  };
  int row = 0;
  for (int y = 0; y < out.height; y += 3 * th, ++row) {
    const int shift = (row * 2 * th) % step_x;
    for (int x = -shift; x < out.width; x += step_x) {
      draw_text(text, x, y, scale, blend);
    }
  }
  return out;
}

// Solid black frame; output is (W + 2w) x (H + 2w).
Image aug_add_border(const Image& img, double width, RngStream&) {
  const int w = static_cast<int>(width);
  Image out(img.width + 2 * w, img.height + 2 * w);
  for (int y = 0; y < img.height; ++y) {
    std::memcpy(out.data.data() + ((static_cast<std::size_t>(y + w) * out.width) + w) * 3,
                img.data.data() + static_cast<std::size_t>(y) * img.width * 3,
                static_cast<std::size_t>(img.width) * 3);
  }
  return out;
}

}  // namespace robench::detail
