#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "corruption_impl.hpp"
#include "robench/image_io.hpp"
#include "robench/image_math.hpp"

namespace robench::detail {

namespace {

// Shared draw order for the per-pixel noise transforms: channel-major,
// raster order within a channel.
template <class F>
Planes per_pixel_noise(const Image& img, F&& f) {
  Planes p = to_planes(img);
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < img.height; ++y) {
      for (int x = 0; x < img.width; ++x) {
        p[c](y, x) = f(p[c](y, x));
      }
    }
  }
  return p;
}

// Poisson sample by CDF inversion from a single uniform draw.
int poisson_inversion(double lambda, double u) {
  if (lambda <= 0.0) return 0;
  double p = std::exp(-lambda);
  double cum = p;
  int k = 0;
  while (u > cum && k < 1000) {
    ++k;
    p *= lambda / k;
    cum += p;
  }
  return k;
}

// Plasma field via diamond-square on a fixed 257x257 lattice (draw count is
// image-size independent), min-max normalized to [0, 1].
Plane plasma_field(int out_w, int out_h, RngStream& rng) {
  constexpr int S = 257;
  PlaneT<double> f = PlaneT<double>::Zero(S, S);
  f(0, 0) = rng.next_f64();
  f(0, S - 1) = rng.next_f64();
  f(S - 1, 0) = rng.next_f64();
  f(S - 1, S - 1) = rng.next_f64();
  double rough = 0.5;
  for (int step = S - 1; step > 1; step /= 2) {
    const int half = step / 2;
    for (int y = half; y < S; y += step) {
      for (int x = half; x < S; x += step) {
        const double avg = (f(y - half, x - half) + f(y - half, x + half) +
                            f(y + half, x - half) + f(y + half, x + half)) /
                           4.0;
        f(y, x) = avg + (rng.next_f64() - 0.5) * rough;
      }
    }
    for (int y = 0; y < S; y += half) {
      for (int x = (y / half) % 2 == 0 ? half : 0; x < S; x += step) {
        double sum = 0.0;
        int n = 0;
        if (y - half >= 0) { sum += f(y - half, x); ++n; }
        if (y + half < S) { sum += f(y + half, x); ++n; }
        if (x - half >= 0) { sum += f(y, x - half); ++n; }
        if (x + half < S) { sum += f(y, x + half); ++n; }
        f(y, x) = sum / n + (rng.next_f64() - 0.5) * rough;
      }
    }
    rough *= 0.5;
  }
  const double lo = f.minCoeff();
  const double hi = f.maxCoeff();
  Plane norm(S, S);
  if (hi > lo) {
    norm = ((f - lo) / (hi - lo)).cast<float>();
  } else {
    norm.setConstant(0.5f);
  }
  return resample_plane(norm, out_w, out_h, Filter::bilinear);
}

// Low-frequency value noise: one uniform draw per lattice node (row-major),
// bilinear between nodes, folded into ridges.
Plane ridged_value_noise(int out_w, int out_h, int lattice, RngStream& rng) {
  Plane l(lattice, lattice);
  for (int y = 0; y < lattice; ++y) {
    for (int x = 0; x < lattice; ++x) {
      l(y, x) = static_cast<float>(rng.next_f64());
    }
  }
  const double rx = out_w > 1 ? static_cast<double>(lattice - 1) / (out_w - 1) : 0.0;
  const double ry = out_h > 1 ? static_cast<double>(lattice - 1) / (out_h - 1) : 0.0;
  Plane out(out_h, out_w);
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      const float v = sample_bilinear_clamp(l, x * rx, y * ry);
      out(y, x) = 1.0f - std::abs(2.0f * v - 1.0f);
    }
  }
  return out;
}

}  // namespace

Image aug_gaussian_noise(const Image& img, double std, RngStream& rng) {
  return to_image(per_pixel_noise(
      img, [&](float v) { return v + static_cast<float>(std * rng.next_gaussian()); }));
}

// out = Poisson(x * scale) / scale; lower scale = stronger noise.
Image aug_shot_noise(const Image& img, double scale, RngStream& rng) {
  return to_image(per_pixel_noise(img, [&](float v) {
    const int k = poisson_inversion(static_cast<double>(v) * scale, rng.next_f64());
    return static_cast<float>(k / scale);
  }));
}

Image aug_speckle_noise(const Image& img, double std, RngStream& rng) {
  return to_image(per_pixel_noise(
      img, [&](float v) { return v * (1.0f + static_cast<float>(std * rng.next_gaussian())); }));
}

// Per pixel in raster order: one uniform draw against `amount`; hits take a
// second draw choosing black or white for the whole pixel.
Image aug_salt_pepper(const Image& img, double amount, RngStream& rng) {
  Image out = img;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (rng.next_f64() < amount) {
        const std::uint8_t v = rng.next_below(2) == 0 ? 0 : 255;
        for (int c = 0; c < 3; ++c) out.at(x, y, c) = v;
      }
    }
  }
  return out;
}

// White fog: per-pixel opacity = intensity * plasma.
Image aug_fog(const Image& img, double intensity, RngStream& rng) {
  const Plane field = plasma_field(img.width, img.height, rng);
  Planes p = to_planes(img);
  for (int c = 0; c < 3; ++c) {
    p[c] = p[c] * (1.0f - static_cast<float>(intensity) * field) +
           static_cast<float>(intensity) * field;
  }
  return to_image(p);
}

// Procedural crystalline overlay (two ridged value-noise octaves),
// screen-blended at the given opacity. A texture-free stand-in; see README.
Image aug_frost(const Image& img, double intensity, RngStream& rng) {
  const Plane o1 = ridged_value_noise(img.width, img.height, 17, rng);
  const Plane o2 = ridged_value_noise(img.width, img.height, 33, rng);
  const Plane overlay = 0.65f * o1 + 0.35f * o2;
  Planes p = to_planes(img);
  for (int c = 0; c < 3; ++c) {
    p[c] = 1.0f - (1.0f - p[c]) * (1.0f - static_cast<float>(intensity) * overlay);
  }
  return to_image(p);
}

// Round white dots (count = density * pixels / 100, radius 1 or 2), then a
// slight global blur. Per dot: draws x, y, radius.
Image aug_snow(const Image& img, double density, RngStream& rng) {
  Planes p = to_planes(img);
  const long n = std::lround(density * img.width * img.height / 100.0);
  for (long i = 0; i < n; ++i) {
    const int x = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(img.width)));
    const int y = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(img.height)));
    const int r = 1 + static_cast<int>(rng.next_below(2));
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) {
        if (dx * dx + dy * dy > r * r) continue;
        const int px = x + dx;
        const int py = y + dy;
        if (px < 0 || px >= img.width || py < 0 || py >= img.height) continue;
        for (int c = 0; c < 3; ++c) p[c](py, px) = 1.0f;
      }
    }
  }
  return to_image(gaussian_blur_planes(p, 0.5));
}

// 15-pixel light streaks, one shared slant angle per image (drawn first),
// then per streak: draws x, y.
Image aug_rain(const Image& img, double density, RngStream& rng) {
  Planes p = to_planes(img);
  const double phi = rng.next_uniform(75.0, 105.0) * M_PI / 180.0;
  const double cx = std::cos(phi);
  const double cy = std::sin(phi);
  const long n = std::lround(density * img.width * img.height / 100.0);
  for (long i = 0; i < n; ++i) {
    const int x = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(img.width)));
    const int y = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(img.height)));
    for (int t = 0; t < 15; ++t) {
      const int px = static_cast<int>(std::lround(x + t * cx));
      const int py = static_cast<int>(std::lround(y + t * cy));
      if (px < 0 || px >= img.width || py < 0 || py >= img.height) continue;
      for (int c = 0; c < 3; ++c) p[c](py, px) = 0.7f + 0.3f * p[c](py, px);
    }
  }
  return to_image(p);
}

// Dark splotches: blur a per-pixel uniform noise plane and darken exactly
// round(coverage * pixels) of the highest-valued pixels (ties broken by
// raster index).
Image aug_spatter(const Image& img, double coverage, RngStream& rng) {
  const int w = img.width;
  const int h = img.height;
  Plane noise(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      noise(y, x) = static_cast<float>(rng.next_f64());
    }
  }
  const Plane blurred = gaussian_blur_plane(noise, 3.0);
  const long k = std::lround(coverage * w * h);
  if (k <= 0) return img;
  std::vector<int> idx(static_cast<std::size_t>(w) * h);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    const float va = blurred(a / w, a % w);
    const float vb = blurred(b / w, b % w);
    if (va != vb) return va > vb;
    return a < b;
  });
  Planes p = to_planes(img);
  const long limit = std::min<long>(k, static_cast<long>(idx.size()));
  for (long i = 0; i < limit; ++i) {
    const int y = idx[i] / w;
    const int x = idx[i] % w;
    for (int c = 0; c < 3; ++c) p[c](y, x) *= 0.25f;
  }
  return to_image(p);
}

Image aug_jpeg_compression(const Image& img, double quality, RngStream&) {
  return jpeg_recompress(img, static_cast<int>(std::lround(quality)));
}

// Nearest-neighbor down to round(scale * dims), nearest back up.
Image aug_pixelate(const Image& img, double scale, RngStream&) {
  const Image down = resample(img, scale, Filter::nearest);
  const Planes up = resample_planes(to_planes(down), img.width, img.height, Filter::nearest);
  return to_image(up);
}

}  // namespace robench::detail
