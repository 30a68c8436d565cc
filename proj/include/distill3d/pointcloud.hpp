// Copyright Contributors to the distill3d Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "distill3d/geometry.hpp"
#include "distill3d/image.hpp"
#include "distill3d/rng.hpp"

namespace distill3d {

struct PointCloud {
  std::vector<Vec3> positions;
  std::vector<Vec3> colors;  // empty or same length as positions, [0,1]

  size_t size() const { return positions.size(); }
  bool has_colors() const { return !colors.empty(); }
};

/// ASCII or binary-little-endian PLY with float x/y/z vertex properties and
/// optional uchar red/green/blue. Throws PlyError with a distinct kind for
/// malformed headers, unsupported property types, and truncated bodies.
PointCloud load_ply(const std::string& path);

/// Binary little-endian PLY, float32 positions, uchar colors when present.
void save_ply(const std::string& path, const PointCloud& cloud);

struct NormalizeResult {
  PointCloud cloud;
  Vec3 center;
  double scale = 1.0;  // applied multiplier: p' = scale * (p - center)
};

/// Centroid to the origin, max radius to exactly 1. scale = 1 when all points
/// coincide. Throws on an empty cloud.
NormalizeResult normalize_unit_sphere(const PointCloud& cloud);

/// Z-buffer point splatting. Each point covers a disc of `splat_radius`
/// pixels around its projection (radius 0 covers the nearest pixel); covered
/// pixels keep the minimum depth. Uncovered pixels carry the invalid marker.
DepthMap render_depth(const PointCloud& cloud, const View& view,
                      double splat_radius);

/// Same z-buffer splat but carrying per-point colors; pixels not covered are
/// filled with `background`. Requires cloud colors (gray 0.5 otherwise).
std::pair<Image, DepthMap> render_rgbd(const PointCloud& cloud,
                                       const View& view, double splat_radius,
                                       const Vec3& background);

enum class SceneKind { Sphere, TwoSpheres, BoxPlusSphere };

SceneKind scene_kind_from_string(const std::string& name);
std::string to_string(SceneKind kind);

/// Maps any surface point to its ground-truth RGB. View-independent.
using Colorizer = std::function<Vec3(const Vec3&)>;

struct SynthScene {
  PointCloud cloud;
  Colorizer colorizer;
};

/// Synthetic scene surfaces sampled at `points_per_unit` points per unit
/// area, colored by the returned ground-truth colorizer. Deterministic under
/// a fixed rng state.
SynthScene synth_scene(SceneKind kind, double points_per_unit, RngStream& rng);

}  // namespace distill3d
