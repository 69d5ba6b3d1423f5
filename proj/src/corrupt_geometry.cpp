#include <Eigen/Dense>

#include <cmath>

#include "corruption_impl.hpp"
#include "robench/image_math.hpp"

namespace robench::detail {

namespace {

DisplacementField field_like(const Image& img) {
  return DisplacementField{Plane::Zero(img.height, img.width),
                           Plane::Zero(img.height, img.width)};
}

// Rotation about the image center; the field holds the inverse mapping.
DisplacementField rotation_field(const Image& img, double degrees) {
  const double t = degrees * M_PI / 180.0;
  const double ct = std::cos(t);
  const double st = std::sin(t);
  const double cx = (img.width - 1) / 2.0;
  const double cy = (img.height - 1) / 2.0;
  DisplacementField f = field_like(img);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const double sx = cx + ct * (x - cx) + st * (y - cy);
      const double sy = cy - st * (x - cx) + ct * (y - cy);
      f.dx(y, x) = static_cast<float>(sx - x);
      f.dy(y, x) = static_cast<float>(sy - y);
    }
  }
  return f;
}

// Homography fit from four (destination -> source) corner pairs, solved as
// the standard 8x8 linear system with h33 = 1.
Eigen::Matrix3d homography(const std::array<std::array<double, 2>, 4>& dst,
                           const std::array<std::array<double, 2>, 4>& src) {
  Eigen::Matrix<double, 8, 8> a = Eigen::Matrix<double, 8, 8>::Zero();
  Eigen::Matrix<double, 8, 1> b;
  for (int i = 0; i < 4; ++i) {
    const double x = dst[i][0], y = dst[i][1];
    const double u = src[i][0], v = src[i][1];
    a.row(2 * i) << x, y, 1, 0, 0, 0, -u * x, -u * y;
    a.row(2 * i + 1) << 0, 0, 0, x, y, 1, -v * x, -v * y;
    b(2 * i) = u;
    b(2 * i + 1) = v;
  }
  const Eigen::Matrix<double, 8, 1> p = a.colPivHouseholderQr().solve(b);
  Eigen::Matrix3d m;
  m << p(0), p(1), p(2), p(3), p(4), p(5), p(6), p(7), 1.0;
  return m;
}

}  // namespace

Image aug_rotate(const Image& img, double degrees, RngStream&) {
  return warp(img, rotation_field(img, degrees));
}

// Horizontal shear about the center row.
Image aug_shear(const Image& img, double degrees, RngStream&) {
  const double k = std::tan(degrees * M_PI / 180.0);
  const double cy = (img.height - 1) / 2.0;
  DisplacementField f = field_like(img);
  for (int y = 0; y < img.height; ++y) {
    const float dx = static_cast<float>(-k * (y - cy));
    for (int x = 0; x < img.width; ++x) f.dx(y, x) = dx;
  }
  return warp(img, f);
}

// Rotation with a unit scale factor; by construction equals aug_rotate.
Image aug_affine(const Image& img, double degrees, RngStream& rng) {
  return aug_rotate(img, degrees, rng);
}

// Corner displacement = magnitude * min(W, H); per corner (TL, TR, BR, BL)
// two sign draws (x then y) decide the direction.
Image aug_perspective(const Image& img, double magnitude, RngStream& rng) {
  const double d = magnitude * std::min(img.width, img.height);
  const double w1 = img.width - 1.0;
  const double h1 = img.height - 1.0;
  const std::array<std::array<double, 2>, 4> dst = {{{0, 0}, {w1, 0}, {w1, h1}, {0, h1}}};
  std::array<std::array<double, 2>, 4> src = dst;
  for (int i = 0; i < 4; ++i) {
    const double sx = rng.next_below(2) == 0 ? -1.0 : 1.0;
    const double sy = rng.next_below(2) == 0 ? -1.0 : 1.0;
    src[i][0] += sx * d;
    src[i][1] += sy * d;
  }
  const Eigen::Matrix3d m = homography(dst, src);
  DisplacementField f = field_like(img);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const double denom = m(2, 0) * x + m(2, 1) * y + m(2, 2);
      const double sx = (m(0, 0) * x + m(0, 1) * y + m(0, 2)) / denom;
      const double sy = (m(1, 0) * x + m(1, 1) * y + m(1, 2)) / denom;
      f.dx(y, x) = static_cast<float>(sx - x);
      f.dy(y, x) = static_cast<float>(sy - y);
    }
  }
  return warp(img, f);
}

// Displacement = alpha * gaussian-smoothed (sigma 8) unit noise. Draw order:
// the full x-noise plane in raster order, then the y-noise plane.
Image aug_elastic(const Image& img, double alpha, RngStream& rng) {
  const int w = img.width;
  const int h = img.height;
  Plane nx(h, w), ny(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      nx(y, x) = static_cast<float>(rng.next_uniform(-1.0, 1.0));
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      ny(y, x) = static_cast<float>(rng.next_uniform(-1.0, 1.0));
    }
  }
  DisplacementField f;
  f.dx = static_cast<float>(alpha) * gaussian_blur_plane(nx, 8.0);
  f.dy = static_cast<float>(alpha) * gaussian_blur_plane(ny, 8.0);
  return warp(img, f);
}

// Bilinear resize that keeps the small result.
Image aug_downsample(const Image& img, double scale, RngStream&) {
  return resample(img, scale, Filter::bilinear);
}

// Bilinear resize that keeps the large result, exposing interpolation
// artifacts to the consumer's own preprocessing.
Image aug_upsample(const Image& img, double scale, RngStream&) {
  return resample(img, scale, Filter::bilinear);
}

}  // namespace robench::detail
