#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace robench {

// 8-bit RGB image, row-major, no padding.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // height * width * 3

  Image() = default;
  Image(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0) {}

  static Image solid(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    Image img(w, h);
    for (std::size_t i = 0; i + 2 < img.data.size(); i += 3) {
      img.data[i] = r;
      img.data[i + 1] = g;
      img.data[i + 2] = b;
    }
    return img;
  }

  std::uint8_t& at(int x, int y, int c) {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  std::uint8_t at(int x, int y, int c) const {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }

  bool operator==(const Image&) const = default;
};

// Float working planes: one Eigen array per channel, rows = y, cols = x.
// Nominal range [0, 1]; intermediate values may leave it, quantization clips.
template <class S>
using PlaneT = Eigen::Array<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using PlanesT = std::array<PlaneT<S>, 3>;
using Plane = PlaneT<float>;
using Planes = PlanesT<float>;

// byte -> [0,1]
Planes to_planes(const Image& img);

// Clip to [0,1], scale by 255, round half away from zero.
Image to_image(const Planes& p);

inline std::uint8_t quantize01(double v) {
  if (v <= 0.0) return 0;
  if (v >= 1.0) return 255;
  long r = std::lround(v * 255.0);
  return static_cast<std::uint8_t>(r < 0 ? 0 : (r > 255 ? 255 : r));
}

enum class Filter { nearest, bilinear };

// round(dim * scale) per axis, clamped to >= 1. *clamped is set when the
// rounded value hit 0 and was raised.
std::pair<int, int> resample_dims(int w, int h, double scale, bool* clamped = nullptr);

// Inverse-mapping displacement per output pixel: source = destination + (dx, dy).
struct DisplacementField {
  Plane dx, dy;
};

Image resample(const Image& img, double scale, Filter f);
Image warp(const Image& img, const DisplacementField& field);
Image gaussian_blur(const Image& img, double sigma);

}  // namespace robench
