#include <cmath>

#include "corruption_impl.hpp"
#include "robench/image_math.hpp"

namespace robench::detail {

Image aug_gaussian_blur(const Image& img, double sigma, RngStream&) {
  return to_image(gaussian_blur_planes(to_planes(img), sigma));
}

// 1 x ksize box kernel rotated by one uniform angle draw in [0, 360) degrees,
// rasterized by bilinear splatting along the line, then normalized.
Image aug_motion_blur(const Image& img, double ksize, RngStream& rng) {
  const int k = static_cast<int>(ksize);
  const double theta = rng.next_uniform(0.0, 360.0) * M_PI / 180.0;
  Eigen::ArrayXXd kernel = Eigen::ArrayXXd::Zero(k, k);
  const double c = (k - 1) / 2.0;
  for (int s = 0; s < k; ++s) {
    const double t = s - c;
    const double px = c + t * std::cos(theta);
    const double py = c + t * std::sin(theta);
    const int x0 = static_cast<int>(std::floor(px));
    const int y0 = static_cast<int>(std::floor(py));
    const double fx = px - x0;
    const double fy = py - y0;
    const auto splat = [&](int x, int y, double w) {
      if (x >= 0 && x < k && y >= 0 && y < k && w > 0.0) kernel(y, x) += w;
    };
    splat(x0, y0, (1 - fx) * (1 - fy));
    splat(x0 + 1, y0, fx * (1 - fy));
    splat(x0, y0 + 1, (1 - fx) * fy);
    splat(x0 + 1, y0 + 1, fx * fy);
  }
  kernel /= kernel.sum();
  return to_image(filter2d_planes(to_planes(img), kernel));
}

// Normalized disk: weight 1 where dx^2 + dy^2 <= radius^2.
Image aug_defocus_blur(const Image& img, double radius, RngStream&) {
  const int r = static_cast<int>(std::ceil(radius));
  const int k = 2 * r + 1;
  Eigen::ArrayXXd kernel = Eigen::ArrayXXd::Zero(k, k);
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      if (static_cast<double>(dx) * dx + static_cast<double>(dy) * dy <= radius * radius) {
        kernel(dy + r, dx + r) = 1.0;
      }
    }
  }
  kernel /= kernel.sum();
  return to_image(filter2d_planes(to_planes(img), kernel));
}

// Mean of five center zooms at factors 1, 1+f/4, 1+f/2, 1+3f/4, 1+f.
Image aug_zoom_blur(const Image& img, double factor, RngStream&) {
  const Planes in = to_planes(img);
  const int w = img.width;
  const int h = img.height;
  const double cx = (w - 1) / 2.0;
  const double cy = (h - 1) / 2.0;
  Planes acc{Plane::Zero(h, w), Plane::Zero(h, w), Plane::Zero(h, w)};
  for (int tap = 0; tap < 5; ++tap) {
    const double z = 1.0 + factor * tap / 4.0;
    for (int c = 0; c < 3; ++c) {
      for (int x = 0; x < w; ++x) {
        const double sx = cx + (x - cx) / z;
        for (int y = 0; y < h; ++y) {
          const double sy = cy + (y - cy) / z;
          acc[c](y, x) += sample_bilinear_clamp(in[c], sx, sy);
        }
      }
    }
  }
  for (int c = 0; c < 3; ++c) acc[c] /= 5.0f;
  return to_image(acc);
}

// Gaussian blur at sigma, then two passes of local pixel swaps: raster order,
// per pixel two draws dx, dy in {-1, 0, 1}, swap with the clamped target.
Image aug_glass_blur(const Image& img, double sigma, RngStream& rng) {
  Image out = to_image(gaussian_blur_planes(to_planes(img), sigma));
  const int w = out.width;
  const int h = out.height;
  for (int iter = 0; iter < 2; ++iter) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int dx = static_cast<int>(rng.next_below(3)) - 1;
        const int dy = static_cast<int>(rng.next_below(3)) - 1;
        int tx = x + dx;
        int ty = y + dy;
        tx = tx < 0 ? 0 : (tx >= w ? w - 1 : tx);
        ty = ty < 0 ? 0 : (ty >= h ? h - 1 : ty);
        for (int c = 0; c < 3; ++c) {
          std::swap(out.at(x, y, c), out.at(tx, ty, c));
        }
      }
    }
  }
  return out;
}

}  // namespace robench::detail
