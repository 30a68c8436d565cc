// Copyright Contributors to the distill3d Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "distill3d/error.hpp"
#include "distill3d/rng.hpp"

namespace distill3d {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Camera convention: right-handed world with +y up. The camera looks down its
// own -z axis; image x runs right, image y runs down. Depth is the distance
// along the optical axis (-z_cam), always positive in front of the camera.

struct Intrinsics {
  double fx = 0, fy = 0;
  double cx = 0, cy = 0;
  int width = 0, height = 0;

  void validate() const {
    if (fx <= 0 || fy <= 0)
      throw DegenerateInputError("Intrinsics: focal lengths must be positive");
    if (cx < 0 || cx >= width || cy < 0 || cy >= height)
      throw DegenerateInputError("Intrinsics: principal point outside image");
  }
};

/// Default pinhole: fx = fy = 0.9 * width, principal point at image center.
Intrinsics default_intrinsics(int width, int height);

struct Pose {
  Mat3 rotation = Mat3::Identity();  // world-to-camera
  Vec3 translation = Vec3::Zero();

  Vec3 to_camera(const Vec3& p_world) const {
    return rotation * p_world + translation;
  }
  Vec3 to_world(const Vec3& p_cam) const {
    return rotation.transpose() * (p_cam - translation);
  }
  Vec3 camera_center() const { return -(rotation.transpose() * translation); }

  /// Orthonormality within 1e-9 and det = +1.
  bool is_rigid(double tol = 1e-9) const;
};

struct View {
  Intrinsics intrinsics;
  Pose pose;
  std::string label;
};

struct OrbitSpec {
  double radius = 2.5;        // meters
  double elevation = 15.0;    // degrees
  double azimuth = 0.0;       // degrees
  Vec3 target = Vec3::Zero();

  void validate() const {
    if (radius <= 0) throw DegenerateInputError("OrbitSpec: radius must be > 0");
    if (elevation < -89.0 || elevation > 89.0)
      throw DegenerateInputError("OrbitSpec: elevation outside [-89, 89]");
  }
};

/// World-to-camera pose with the camera at `eye` looking at `target`.
/// Throws DegenerateInputError when eye == target or up is parallel to the
/// view direction.
Pose look_at(const Vec3& eye, const Vec3& target, const Vec3& up);

/// Camera position on the orbit. Azimuth 0 places the eye on the +z axis.
Vec3 orbit_eye(const OrbitSpec& spec);

/// Full view for an orbit position (up = +y).
View orbit_view(const OrbitSpec& spec, const Intrinsics& intr,
                std::string label = {});

struct PixelDepth {
  Vec2 pixel;
  double depth = 0.0;
};

/// Continuous pixel coordinates and positive depth, or nullopt when the point
/// is behind the camera.
std::optional<PixelDepth> project(const Vec3& point_world, const View& view);

/// Inverse of project. Throws on non-positive depth.
Vec3 unproject(const Vec2& pixel, double depth, const View& view);

/// World-space ray through a pixel, scaled so that eye + t * dir has pinhole
/// depth exactly t. |dir| is the metric length per unit depth.
struct PixelRay {
  Vec3 origin;
  Vec3 dir;
};
PixelRay pixel_ray(const Vec2& pixel, const View& view);

/// Shift azimuth by +-step (sign drawn from rng) and jitter elevation within
/// +-elevation_jitter degrees. Radius and target are unchanged.
OrbitSpec sample_neighbor(const OrbitSpec& current, double step, RngStream& rng,
                          double elevation_jitter = 5.0);

/// Ordered neighbor pairs chaining the full 360 degree orbit, starting at the
/// reference azimuth. Elevation is held at the reference value.
/// Throws when step does not divide 360.
std::vector<std::pair<OrbitSpec, OrbitSpec>> sweep_orbits(
    const OrbitSpec& start, double step);

std::vector<std::pair<View, View>> sweep_sequence(const OrbitSpec& start,
                                                  double step,
                                                  const Intrinsics& intr);

inline double wrap_degrees(double deg) {
  double w = std::fmod(deg, 360.0);
  if (w < 0) w += 360.0;
  return w;
}

}  // namespace distill3d
