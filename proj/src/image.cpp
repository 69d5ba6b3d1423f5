#include "robench/image.hpp"

#include <cmath>
#include <cstdio>

#include "robench/image_math.hpp"

namespace robench {

Planes to_planes(const Image& img) {
  Planes p{Plane(img.height, img.width), Plane(img.height, img.width),
           Plane(img.height, img.width)};
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      for (int c = 0; c < 3; ++c) {
        p[c](y, x) = static_cast<float>(img.at(x, y, c)) / 255.0f;
      }
    }
  }
  return p;
}

Image to_image(const Planes& p) {
  const int h = static_cast<int>(p[0].rows());
  const int w = static_cast<int>(p[0].cols());
  Image img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        img.at(x, y, c) = quantize01(p[c](y, x));
      }
    }
  }
  return img;
}

std::pair<int, int> resample_dims(int w, int h, double scale, bool* clamped) {
  int ow = static_cast<int>(std::lround(w * scale));
  int oh = static_cast<int>(std::lround(h * scale));
  bool hit = false;
  if (ow < 1) {
    ow = 1;
    hit = true;
  }
  if (oh < 1) {
    oh = 1;
    hit = true;
  }
  if (clamped) *clamped = hit;
  return {ow, oh};
}

Image resample(const Image& img, double scale, Filter f) {
  bool clamped = false;
  const auto [ow, oh] = resample_dims(img.width, img.height, scale, &clamped);
  if (clamped) {
    std::fprintf(stderr, "warning: resample target dimension rounded to 0, clamped to 1\n");
  }
  if (ow == img.width && oh == img.height && scale == 1.0) return img;
  return to_image(resample_planes(to_planes(img), ow, oh, f));
}

Image warp(const Image& img, const DisplacementField& field) {
  return to_image(warp_planes(to_planes(img), field));
}

Image gaussian_blur(const Image& img, double sigma) {
  return to_image(gaussian_blur_planes(to_planes(img), sigma));
}

}  // namespace robench
