// Copyright Contributors to the distill3d Project
// SPDX-License-Identifier: Apache-2.0

#include "distill3d/warp.hpp"

namespace distill3d {

std::pair<Image, WarpMask> warp_backward(const Image& src,
                                         const DepthMap& depth_src,
                                         const DepthMap& depth_dst,
                                         const View& view_src,
                                         const View& view_dst,
                                         double occlusion_tol) {
  if (src.width != depth_src.width || src.height != depth_src.height ||
      !depth_src.same_shape(depth_dst))
    throw ShapeMismatchError("warp_backward: image/depth shapes disagree");

  const int H = src.height;
  const int W = src.width;
  Image out(H, W, 0.0);
  WarpMask mask(H, W, false);

  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      const double d_dst = depth_dst.at(y, x);
      if (d_dst <= 0.0) continue;
      const Vec3 world = unproject(Vec2(x, y), d_dst, view_dst);
      const auto proj = project(world, view_src);
      if (!proj) continue;
      const double px = proj->pixel.x();
      const double py = proj->pixel.y();
      if (px < 0.0 || px > W - 1.0 || py < 0.0 || py > H - 1.0) continue;
      const double d_src = bilinear_depth(depth_src, px, py);
      if (d_src <= 0.0) continue;
      if (std::abs(proj->depth - d_src) > occlusion_tol * proj->depth) continue;
      mask.set(y, x, true);
      for (int c = 0; c < 3; ++c)
        out.at(y, x, c) = bilinear_sample(src, px, py, c);
    }
  }
  return {std::move(out), std::move(mask)};
}

WarpMask reference_mask(const DepthMap& depth_ref) {
  WarpMask mask(depth_ref.height, depth_ref.width, false);
  for (int y = 0; y < depth_ref.height; ++y)
    for (int x = 0; x < depth_ref.width; ++x)
      mask.set(y, x, depth_ref.valid(y, x));
  return mask;
}

double masked_mse(const Image& a, const Image& b, const WarpMask& m,
                  bool* empty_mask) {
  if (!a.same_shape(b) || a.width != m.width || a.height != m.height)
    throw ShapeMismatchError("masked_mse: shape mismatch");
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
  if (empty_mask) *empty_mask = (n == 0);
  if (n == 0) return 0.0;
  return se / (3.0 * static_cast<double>(n));
}

}  // namespace distill3d
