// Copyright Contributors to the distill3d Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "distill3d/error.hpp"

namespace distill3d {

/// H x W x 3 image, row-major, interleaved channels, values nominally in [0,1].
struct Image {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;  // size = height*width*3

  Image() = default;
  Image(int h, int w, double fill = 0.0)
      : width(w), height(h), pixels(static_cast<size_t>(h) * w * 3, fill) {}

  double& at(int y, int x, int c) {
    return pixels[(static_cast<size_t>(y) * width + x) * 3 + c];
  }
  double at(int y, int x, int c) const {
    return pixels[(static_cast<size_t>(y) * width + x) * 3 + c];
  }

  size_t size() const { return pixels.size(); }
  bool same_shape(const Image& o) const {
    return width == o.width && height == o.height;
  }
};

/// H x W metric depth in meters. Non-positive entries mean "no surface".
struct DepthMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;  // size = height*width

  static constexpr double kInvalid = 0.0;

  DepthMap() = default;
  DepthMap(int h, int w, double fill = kInvalid)
      : width(w), height(h), values(static_cast<size_t>(h) * w, fill) {}

  double& at(int y, int x) { return values[static_cast<size_t>(y) * width + x]; }
  double at(int y, int x) const {
    return values[static_cast<size_t>(y) * width + x];
  }
  bool valid(int y, int x) const { return at(y, x) > 0.0; }
  bool same_shape(const DepthMap& o) const {
    return width == o.width && height == o.height;
  }
};

/// H x W visibility booleans.
struct WarpMask {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> bits;  // 0 or 1

  WarpMask() = default;
  WarpMask(int h, int w, bool fill = false)
      : width(w), height(h), bits(static_cast<size_t>(h) * w, fill ? 1 : 0) {}

  void set(int y, int x, bool v) {
    bits[static_cast<size_t>(y) * width + x] = v ? 1 : 0;
  }
  bool get(int y, int x) const {
    return bits[static_cast<size_t>(y) * width + x] != 0;
  }
  size_t count() const {
    size_t n = 0;
    for (uint8_t b : bits) n += b;
    return n;
  }
  bool same_shape(const WarpMask& o) const {
    return width == o.width && height == o.height;
  }
};

/// Bilinear sample of one channel at continuous pixel coordinates.
/// Coordinates are in the convention where integer (x, y) lands exactly on
/// pixel centers. Out-of-range coordinates are the caller's problem; this
/// clamps the taps to the image border.
inline double bilinear_sample(const Image& img, double x, double y, int c) {
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0;
  const double fy = y - y0;
  auto cl = [](int v, int lo, int hi) { return std::min(std::max(v, lo), hi); };
  const int xa = cl(x0, 0, img.width - 1);
  const int xb = cl(x0 + 1, 0, img.width - 1);
  const int ya = cl(y0, 0, img.height - 1);
  const int yb = cl(y0 + 1, 0, img.height - 1);
  return (1 - fy) * ((1 - fx) * img.at(ya, xa, c) + fx * img.at(ya, xb, c)) +
         fy * ((1 - fx) * img.at(yb, xa, c) + fx * img.at(yb, xb, c));
}

/// Bilinear depth sample. Valid only if every tap with nonzero weight carries
/// a valid depth; returns kInvalid otherwise.
inline double bilinear_depth(const DepthMap& d, double x, double y) {
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0;
  const double fy = y - y0;
  double acc = 0.0;
  for (int dy = 0; dy < 2; ++dy) {
    for (int dx = 0; dx < 2; ++dx) {
      const double w = (dx ? fx : 1 - fx) * (dy ? fy : 1 - fy);
      if (w == 0.0) continue;
      const int xx = x0 + dx;
      const int yy = y0 + dy;
      if (xx < 0 || xx >= d.width || yy < 0 || yy >= d.height)
        return DepthMap::kInvalid;
      const double v = d.at(yy, xx);
      if (v <= 0.0) return DepthMap::kInvalid;
      acc += w * v;
    }
  }
  return acc;
}

/// PSNR over masked pixels, peak 1.0. Identical images cap at 99 dB.
/// Throws if the mask is empty.
inline double masked_psnr(const Image& a, const Image& b, const WarpMask& m) {
  if (!a.same_shape(b) || a.width != m.width || a.height != m.height)
    throw ShapeMismatchError("masked_psnr: shape mismatch");
  double se = 0.0;
  size_t n = 0;
  for (int y = 0; y < a.height; ++y) {
    for (int x = 0; x < a.width; ++x) {
      if (!m.get(y, x)) continue;
      ++n;
      for (int c = 0; c < 3; ++c) {
        const double d = a.at(y, x, c) - b.at(y, x, c);
        se += d * d;
      }
    }
  }
  if (n == 0) throw Error("masked_psnr: empty mask");
  const double mse = se / (3.0 * static_cast<double>(n));
  if (mse <= 0.0) return 99.0;
  return std::min(99.0, -10.0 * std::log10(mse));
}

inline bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace distill3d
