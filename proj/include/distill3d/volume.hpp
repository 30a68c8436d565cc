// Copyright Contributors to the distill3d Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "distill3d/geometry.hpp"
#include "distill3d/image.hpp"
#include "distill3d/rng.hpp"

namespace distill3d {

/// Dense voxel volume. Raw parameters are unconstrained; density maps through
/// softplus to sigma >= 0 and color through a sigmoid to [0,1]. Values are
/// stored at corner-aligned nodes and trilinearly interpolated; points outside
/// the bounds contribute nothing.
struct VoxelGrid {
  int resolution = 0;  // nodes per axis, >= 2
  Vec3 bounds_min = Vec3(-1.2, -1.2, -1.2);
  Vec3 bounds_max = Vec3(1.2, 1.2, 1.2);
  std::vector<double> density_raw;  // R^3
  std::vector<double> color_raw;    // R^3 * 3

  size_t node_count() const {
    return static_cast<size_t>(resolution) * resolution * resolution;
  }
  size_t node_index(int ix, int iy, int iz) const {
    return (static_cast<size_t>(iz) * resolution + iy) * resolution + ix;
  }
  void validate() const;
};

struct RenderConfig {
  int samples_per_ray = 64;
  double near = 1.0;
  double far = 4.0;
  Vec3 background = Vec3(1.0, 1.0, 1.0);
  bool jitter = false;
  uint64_t jitter_seed = 0;

  void validate() const;
};

struct RenderOutput {
  Image image;
  std::vector<double> opacity;  // H*W accumulated alpha in [0,1]
  DepthMap expected_depth;      // alpha-weighted; 0 (invalid) on empty rays

  double opacity_at(int y, int x) const {
    return opacity[static_cast<size_t>(y) * image.width + x];
  }
};

/// One raymarch sample, exposed so tests can audit the compositing weights.
struct RaySample {
  double t = 0;      // pinhole depth of the sample
  double sigma = 0;  // interpolated density
  double alpha = 0;  // 1 - exp(-sigma * segment)
  double trans = 0;  // transmittance before this sample
};

/// March one pixel ray; fills `samples` and returns the final transmittance.
/// ray_index seeds per-sample jitter deterministically.
double trace_ray(const VoxelGrid& grid, const PixelRay& ray,
                 const RenderConfig& cfg, uint64_t ray_index,
                 std::vector<RaySample>& samples);

/// Emission-absorption volume rendering. Deterministic for identical
/// (grid, view, cfg, seed).
RenderOutput render(const VoxelGrid& grid, const View& view,
                    const RenderConfig& cfg);

struct GridGrads {
  std::vector<double> density_raw;
  std::vector<double> color_raw;
};

/// Exact vector-Jacobian product of render's image output with respect to the
/// raw grid parameters, including the softplus/sigmoid chain factors. Uses
/// the same jitter stream as render.
GridGrads render_vjp(const VoxelGrid& grid, const View& view,
                     const RenderConfig& cfg, const Image& pixel_grad);

enum class GridInit { UniformFog, GaussianBlob };

/// Deterministic under the rng state. uniform_fog lands sigma in
/// [0.09, 0.11]; gaussian_blob concentrates density at the bounds center.
VoxelGrid init_grid(int resolution, const Vec3& bounds_min,
                    const Vec3& bounds_max, GridInit init, RngStream& rng);

double softplus(double x);
double inv_softplus(double y);
double sigmoid(double x);

}  // namespace distill3d
