#include <algorithm>
#include <array>
#include <cmath>

#include "corruption_impl.hpp"
#include "robench/image_math.hpp"

namespace robench::detail {

namespace {

Planes scale_brightness(Planes p, double f) {
  for (int c = 0; c < 3; ++c) p[c] *= static_cast<float>(f);
  return p;
}

// Contrast about the mean of the luma plane.
Planes scale_contrast(Planes p, double f) {
  const double m = luma(p).cast<double>().mean();
  for (int c = 0; c < 3; ++c) {
    p[c] = static_cast<float>(m) + static_cast<float>(f) * (p[c] - static_cast<float>(m));
  }
  return p;
}

// Blend between the luma plane (f = 0) and the original (f = 1); f > 1
// oversaturates.
Planes scale_saturation(Planes p, double f) {
  const Plane l = luma(p);
  for (int c = 0; c < 3; ++c) {
    p[c] = l + static_cast<float>(f) * (p[c] - l);
  }
  return p;
}

void rgb_to_hsv(double r, double g, double b, double& h, double& s, double& v) {
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double d = mx - mn;
  v = mx;
  s = mx > 0.0 ? d / mx : 0.0;
  if (d <= 0.0) {
    h = 0.0;
  } else if (mx == r) {
    h = 60.0 * std::fmod((g - b) / d, 6.0);
  } else if (mx == g) {
    h = 60.0 * ((b - r) / d + 2.0);
  } else {
    h = 60.0 * ((r - g) / d + 4.0);
  }
  if (h < 0.0) h += 360.0;
}

void hsv_to_rgb(double h, double s, double v, double& r, double& g, double& b) {
  const double c = v * s;
  const double hp = h / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r1 = 0, g1 = 0, b1 = 0;
  if (hp < 1) { r1 = c; g1 = x; }
  else if (hp < 2) { r1 = x; g1 = c; }
  else if (hp < 3) { g1 = c; b1 = x; }
  else if (hp < 4) { g1 = x; b1 = c; }
  else if (hp < 5) { r1 = x; b1 = c; }
  else { r1 = c; b1 = x; }
  const double m = v - c;
  r = r1 + m;
  g = g1 + m;
  b = b1 + m;
}

using Lut = std::array<std::uint8_t, 256>;

Image apply_lut_per_channel(const Image& img, const std::array<Lut, 3>& luts) {
  Image out = img;
  for (std::size_t i = 0; i < out.data.size(); i += 3) {
    out.data[i] = luts[0][out.data[i]];
    out.data[i + 1] = luts[1][out.data[i + 1]];
    out.data[i + 2] = luts[2][out.data[i + 2]];
  }
  return out;
}

std::array<std::array<long, 256>, 3> histograms(const Image& img) {
  std::array<std::array<long, 256>, 3> h{};
  for (std::size_t i = 0; i < img.data.size(); i += 3) {
    ++h[0][img.data[i]];
    ++h[1][img.data[i + 1]];
    ++h[2][img.data[i + 2]];
  }
  return h;
}

}  // namespace

Image aug_brightness(const Image& img, double factor, RngStream&) {
  return to_image(scale_brightness(to_planes(img), factor));
}

Image aug_contrast(const Image& img, double factor, RngStream&) {
  return to_image(scale_contrast(to_planes(img), factor));
}

Image aug_saturation(const Image& img, double factor, RngStream&) {
  return to_image(scale_saturation(to_planes(img), factor));
}

Image aug_gamma(const Image& img, double g, RngStream&) {
  Planes p = to_planes(img);
  for (int c = 0; c < 3; ++c) {
    p[c] = p[c].unaryExpr(
        [g](float v) { return static_cast<float>(std::pow(static_cast<double>(v), g)); });
  }
  return to_image(p);
}

Image aug_hue_shift(const Image& img, double degrees, RngStream&) {
  Planes p = to_planes(img);
  const int h = img.height;
  const int w = img.width;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double hh, ss, vv, r, g, b;
      rgb_to_hsv(p[0](y, x), p[1](y, x), p[2](y, x), hh, ss, vv);
      hh = std::fmod(hh + degrees, 360.0);
      if (hh < 0.0) hh += 360.0;
      hsv_to_rgb(hh, ss, vv, r, g, b);
      p[0](y, x) = static_cast<float>(r);
      p[1](y, x) = static_cast<float>(g);
      p[2](y, x) = static_cast<float>(b);
    }
  }
  return to_image(p);
}

// Three uniform draws in [-range, range], fixed order: brightness factor,
// contrast factor, saturation factor; applied in that order.
Image aug_color_jitter(const Image& img, double range, RngStream& rng) {
  const double fb = 1.0 + rng.next_uniform(-range, range);
  const double fc = 1.0 + rng.next_uniform(-range, range);
  const double fs = 1.0 + rng.next_uniform(-range, range);
  Planes p = scale_brightness(to_planes(img), fb);
  p = scale_contrast(std::move(p), fc);
  p = scale_saturation(std::move(p), fs);
  return to_image(p);
}

// Unsharp mask: out = in + factor * (in - blur(in, sigma 1)).
Image aug_sharpen(const Image& img, double factor, RngStream&) {
  Planes p = to_planes(img);
  const Planes blurred = gaussian_blur_planes(p, 1.0);
  for (int c = 0; c < 3; ++c) {
    p[c] = p[c] + static_cast<float>(factor) * (p[c] - blurred[c]);
  }
  return to_image(p);
}

Image aug_posterize(const Image& img, double bits, RngStream&) {
  const int b = static_cast<int>(bits);
  const std::uint8_t mask = static_cast<std::uint8_t>(0xFF << (8 - b));
  Image out = img;
  for (std::uint8_t& v : out.data) v = static_cast<std::uint8_t>(v & mask);
  return out;
}

// Invert every sample at or above the threshold.
Image aug_solarize(const Image& img, double threshold, RngStream&) {
  const int t = static_cast<int>(threshold);
  Image out = img;
  for (std::uint8_t& v : out.data) {
    if (v >= t) v = static_cast<std::uint8_t>(255 - v);
  }
  return out;
}

Image aug_flip_h(const Image& img, double, RngStream&) {
  Image out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = img.at(img.width - 1 - x, y, c);
    }
  }
  return out;
}

Image aug_flip_v(const Image& img, double, RngStream&) {
  Image out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = img.at(x, img.height - 1 - y, c);
    }
  }
  return out;
}

// Integer luma (0.299, 0.587, 0.114) replicated to all channels; exact and
// idempotent in the byte domain.
Image aug_grayscale(const Image& img, double, RngStream&) {
  Image out = img;
  for (std::size_t i = 0; i < out.data.size(); i += 3) {
    const double g =
        0.299 * out.data[i] + 0.587 * out.data[i + 1] + 0.114 * out.data[i + 2];
    long v = std::lround(g);
    v = v < 0 ? 0 : (v > 255 ? 255 : v);
    out.data[i] = out.data[i + 1] = out.data[i + 2] = static_cast<std::uint8_t>(v);
  }
  return out;
}

Image aug_invert(const Image& img, double, RngStream&) {
  Image out = img;
  for (std::uint8_t& v : out.data) v = static_cast<std::uint8_t>(255 - v);
  return out;
}

// Fixed cyclic permutation R->G->B->R; three applications are the identity.
Image aug_channel_swap(const Image& img, double, RngStream&) {
  Image out = img;
  for (std::size_t i = 0; i < out.data.size(); i += 3) {
    const std::uint8_t r = out.data[i];
    const std::uint8_t g = out.data[i + 1];
    const std::uint8_t b = out.data[i + 2];
    out.data[i] = b;      // R' = B
    out.data[i + 1] = r;  // G' = R
    out.data[i + 2] = g;  // B' = G
  }
  return out;
}

// Per-channel histogram equalization with the classic integer LUT
// construction (step = (pixels - count of the top occupied bin) / 255).
Image aug_equalize(const Image& img, double, RngStream&) {
  const auto hists = histograms(img);
  std::array<Lut, 3> luts;
  for (int c = 0; c < 3; ++c) {
    const auto& h = hists[c];
    long total = 0;
    int occupied = 0;
    int top_occupied = -1;
    for (int v = 0; v < 256; ++v) {
      total += h[v];
      if (h[v] > 0) {
        ++occupied;
        top_occupied = v;
      }
    }
    if (occupied <= 1) {
      for (int v = 0; v < 256; ++v) luts[c][v] = static_cast<std::uint8_t>(v);
      continue;
    }
    const long step = (total - h[top_occupied]) / 255;
    if (step == 0) {
      for (int v = 0; v < 256; ++v) luts[c][v] = static_cast<std::uint8_t>(v);
      continue;
    }
    long n = step / 2;
    for (int v = 0; v < 256; ++v) {
      long mapped = n / step;
      luts[c][v] = static_cast<std::uint8_t>(mapped > 255 ? 255 : mapped);
      n += h[v];
    }
  }
  return apply_lut_per_channel(img, luts);
}

// Per-channel linear stretch of [min, max] to [0, 255]; idempotent because a
// stretched channel already spans the full range.
Image aug_autocontrast(const Image& img, double, RngStream&) {
  const auto hists = histograms(img);
  std::array<Lut, 3> luts;
  for (int c = 0; c < 3; ++c) {
    int lo = 0;
    while (lo < 256 && hists[c][lo] == 0) ++lo;
    int hi = 255;
    while (hi >= 0 && hists[c][hi] == 0) --hi;
    if (hi <= lo) {
      for (int v = 0; v < 256; ++v) luts[c][v] = static_cast<std::uint8_t>(v);
      continue;
    }
    for (int v = 0; v < 256; ++v) {
      if (v <= lo) {
        luts[c][v] = 0;
      } else if (v >= hi) {
        luts[c][v] = 255;
      } else {
        luts[c][v] = static_cast<std::uint8_t>(std::lround((v - lo) * 255.0 / (hi - lo)));
      }
    }
  }
  return apply_lut_per_channel(img, luts);
}

}  // namespace robench::detail
