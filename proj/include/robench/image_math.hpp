#pragma once

#include <Eigen/Core>

#include <cmath>
#include <vector>

#include "robench/image.hpp"

namespace robench {

// Mirror index p into [0, n) without repeating the edge sample
// (…3 2 1 | 0 1 2 3 | 2 1 0…).
inline int reflect101(int p, int n) {
  if (n == 1) return 0;
  while (p < 0 || p >= n) {
    if (p < 0) p = -p;
    if (p >= n) p = 2 * n - 2 - p;
  }
  return p;
}

template <class S>
PlaneT<S> luma(const PlanesT<S>& p) {
  return S(0.299) * p[0] + S(0.587) * p[1] + S(0.114) * p[2];
}

// Bilinear tap with clamp-to-edge, for resampling.
template <class S>
S sample_bilinear_clamp(const PlaneT<S>& p, double sx, double sy) {
  const int w = static_cast<int>(p.cols());
  const int h = static_cast<int>(p.rows());
  double fx0 = std::floor(sx);
  double fy0 = std::floor(sy);
  int x0 = static_cast<int>(fx0);
  int y0 = static_cast<int>(fy0);
  const double ax = sx - fx0;
  const double ay = sy - fy0;
  const auto cx = [w](int x) { return x < 0 ? 0 : (x >= w ? w - 1 : x); };
  const auto cy = [h](int y) { return y < 0 ? 0 : (y >= h ? h - 1 : y); };
  const double v00 = p(cy(y0), cx(x0));
  const double v01 = p(cy(y0), cx(x0 + 1));
  const double v10 = p(cy(y0 + 1), cx(x0));
  const double v11 = p(cy(y0 + 1), cx(x0 + 1));
  const double top = v00 * (1.0 - ax) + v01 * ax;
  const double bot = v10 * (1.0 - ax) + v11 * ax;
  return static_cast<S>(top * (1.0 - ay) + bot * ay);
}

// Bilinear tap where out-of-range contributions are black, for warps.
template <class S>
S sample_bilinear_black(const PlaneT<S>& p, double sx, double sy) {
  const int w = static_cast<int>(p.cols());
  const int h = static_cast<int>(p.rows());
  double fx0 = std::floor(sx);
  double fy0 = std::floor(sy);
  int x0 = static_cast<int>(fx0);
  int y0 = static_cast<int>(fy0);
  const double ax = sx - fx0;
  const double ay = sy - fy0;
  const auto tap = [&](int x, int y) -> double {
    if (x < 0 || x >= w || y < 0 || y >= h) return 0.0;
    return p(y, x);
  };
  const double top = tap(x0, y0) * (1.0 - ax) + tap(x0 + 1, y0) * ax;
  const double bot = tap(x0, y0 + 1) * (1.0 - ax) + tap(x0 + 1, y0 + 1) * ax;
  return static_cast<S>(top * (1.0 - ay) + bot * ay);
}

// Point-sampled resize with center alignment: source x = (x + 0.5) * in/out - 0.5.
// Nearest rounds half away from zero; bilinear clamps taps to the edge.
template <class S>
PlaneT<S> resample_plane(const PlaneT<S>& p, int out_w, int out_h, Filter f) {
  const int in_w = static_cast<int>(p.cols());
  const int in_h = static_cast<int>(p.rows());
  const double rx = static_cast<double>(in_w) / out_w;
  const double ry = static_cast<double>(in_h) / out_h;
  PlaneT<S> out(out_h, out_w);
  for (int x = 0; x < out_w; ++x) {
    const double sx = (x + 0.5) * rx - 0.5;
    for (int y = 0; y < out_h; ++y) {
      const double sy = (y + 0.5) * ry - 0.5;
      if (f == Filter::nearest) {
        int ix = static_cast<int>(std::lround(sx));
        int iy = static_cast<int>(std::lround(sy));
        ix = ix < 0 ? 0 : (ix >= in_w ? in_w - 1 : ix);
        iy = iy < 0 ? 0 : (iy >= in_h ? in_h - 1 : iy);
        out(y, x) = p(iy, ix);
      } else {
        out(y, x) = sample_bilinear_clamp(p, sx, sy);
      }
    }
  }
  return out;
}

template <class S>
PlanesT<S> resample_planes(const PlanesT<S>& p, int out_w, int out_h, Filter f) {
  return {resample_plane(p[0], out_w, out_h, f), resample_plane(p[1], out_w, out_h, f),
          resample_plane(p[2], out_w, out_h, f)};
}

// Inverse-mapped warp: out(y, x) = in(x + dx(y,x), y + dy(y,x)), bilinear,
// black fill outside the source.
template <class S>
PlaneT<S> warp_plane(const PlaneT<S>& p, const Plane& dx, const Plane& dy) {
  const int w = static_cast<int>(p.cols());
  const int h = static_cast<int>(p.rows());
  PlaneT<S> out(h, w);
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) {
      const double sx = static_cast<double>(x) + dx(y, x);
      const double sy = static_cast<double>(y) + dy(y, x);
      out(y, x) = sample_bilinear_black(p, sx, sy);
    }
  }
  return out;
}

template <class S>
PlanesT<S> warp_planes(const PlanesT<S>& p, const DisplacementField& field) {
  return {warp_plane(p[0], field.dx, field.dy), warp_plane(p[1], field.dx, field.dy),
          warp_plane(p[2], field.dx, field.dy)};
}

inline std::vector<double> gaussian_kernel_1d(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double v = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
    k[i + radius] = v;
    sum += v;
  }
  for (double& v : k) v /= sum;
  return k;
}

// Separable Gaussian, kernel radius ceil(3*sigma), mirrored borders.
template <class S>
PlaneT<S> gaussian_blur_plane(const PlaneT<S>& p, double sigma) {
  const std::vector<double> k = gaussian_kernel_1d(sigma);
  const int radius = static_cast<int>(k.size() / 2);
  const int w = static_cast<int>(p.cols());
  const int h = static_cast<int>(p.rows());
  PlaneT<S> tmp(h, w), out(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) acc += k[i + radius] * p(y, reflect101(x + i, w));
      tmp(y, x) = static_cast<S>(acc);
    }
  }
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) acc += k[i + radius] * tmp(reflect101(y + i, h), x);
      out(y, x) = static_cast<S>(acc);
    }
  }
  return out;
}

template <class S>
PlanesT<S> gaussian_blur_planes(const PlanesT<S>& p, double sigma) {
  return {gaussian_blur_plane(p[0], sigma), gaussian_blur_plane(p[1], sigma),
          gaussian_blur_plane(p[2], sigma)};
}

// Dense correlation with an odd-sized kernel, mirrored borders. Every kernel
// built in this codebase is symmetric under 180-degree rotation, so
// correlation and convolution coincide.
template <class S>
PlaneT<S> filter2d(const PlaneT<S>& p, const Eigen::ArrayXXd& kernel) {
  const int kh = static_cast<int>(kernel.rows());
  const int kw = static_cast<int>(kernel.cols());
  const int ry = kh / 2;
  const int rx = kw / 2;
  const int w = static_cast<int>(p.cols());
  const int h = static_cast<int>(p.rows());
  PlaneT<S> out(h, w);
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) {
      double acc = 0.0;
      for (int j = 0; j < kh; ++j) {
        const int sy = reflect101(y + j - ry, h);
        for (int i = 0; i < kw; ++i) {
          acc += kernel(j, i) * p(sy, reflect101(x + i - rx, w));
        }
      }
      out(y, x) = static_cast<S>(acc);
    }
  }
  return out;
}

template <class S>
PlanesT<S> filter2d_planes(const PlanesT<S>& p, const Eigen::ArrayXXd& kernel) {
  return {filter2d(p[0], kernel), filter2d(p[1], kernel), filter2d(p[2], kernel)};
}

}  // namespace robench
