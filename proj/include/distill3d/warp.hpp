// Copyright Contributors to the distill3d Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>

#include "distill3d/geometry.hpp"
#include "distill3d/image.hpp"

namespace distill3d {

/// Backward (gather) warp of `src` seen from view_src into view_dst, driven by
/// the destination depth map. For each destination pixel with valid depth:
/// unproject in the destination view, project into the source view, and accept
/// the bilinear sample when the projected depth agrees with the source depth
/// within occlusion_tol (relative). Rejected pixels are written as 0 and
/// masked out. Deterministic and bit-exact across runs.
std::pair<Image, WarpMask> warp_backward(const Image& src,
                                         const DepthMap& depth_src,
                                         const DepthMap& depth_dst,
                                         const View& view_src,
                                         const View& view_dst,
                                         double occlusion_tol = 0.01);

/// Object mask of the reference view: true exactly where depth is valid.
WarpMask reference_mask(const DepthMap& depth_ref);

/// Mean squared channel difference over masked pixels, normalized by
/// (3 * mask count). An empty mask yields 0 and sets *empty_mask when given.
double masked_mse(const Image& a, const Image& b, const WarpMask& m,
                  bool* empty_mask = nullptr);

}  // namespace distill3d
