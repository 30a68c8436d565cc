// Copyright Contributors to the distill3d Project
// SPDX-License-Identifier: Apache-2.0

#include "distill3d/geometry.hpp"

#include <cmath>

namespace distill3d {

namespace {
constexpr double kDegToRad = M_PI / 180.0;
constexpr double kMinDepth = 1e-12;
}  // namespace

Intrinsics default_intrinsics(int width, int height) {
  Intrinsics intr;
  intr.fx = 0.9 * width;
  intr.fy = 0.9 * width;
  intr.cx = width / 2.0;
  intr.cy = height / 2.0;
  intr.width = width;
  intr.height = height;
  intr.validate();
  return intr;
}

bool Pose::is_rigid(double tol) const {
  const Mat3 rtr = rotation.transpose() * rotation;
  if ((rtr - Mat3::Identity()).cwiseAbs().maxCoeff() > tol) return false;
  return std::abs(rotation.determinant() - 1.0) <= tol;
}

Pose look_at(const Vec3& eye, const Vec3& target, const Vec3& up) {
  const Vec3 diff = target - eye;
  if (diff.norm() < 1e-15)
    throw DegenerateInputError("look_at: eye coincides with target");
  const Vec3 forward = diff.normalized();
  Vec3 side = forward.cross(up);
  if (side.norm() < 1e-12)
    throw DegenerateInputError("look_at: up is parallel to the view direction");
  side.normalize();
  const Vec3 true_up = side.cross(forward);

  Pose pose;
  pose.rotation.row(0) = side;
  pose.rotation.row(1) = true_up;
  pose.rotation.row(2) = -forward;  // camera z points backward
  pose.translation = -(pose.rotation * eye);
  return pose;
}

Vec3 orbit_eye(const OrbitSpec& spec) {
  spec.validate();
  const double az = spec.azimuth * kDegToRad;
  const double el = spec.elevation * kDegToRad;
  return spec.target + spec.radius * Vec3(std::cos(el) * std::sin(az),
                                          std::sin(el),
                                          std::cos(el) * std::cos(az));
}

View orbit_view(const OrbitSpec& spec, const Intrinsics& intr,
                std::string label) {
  View view;
  view.intrinsics = intr;
  view.pose = look_at(orbit_eye(spec), spec.target, Vec3(0, 1, 0));
  view.label = std::move(label);
  return view;
}

std::optional<PixelDepth> project(const Vec3& point_world, const View& view) {
  const Vec3 cam = view.pose.to_camera(point_world);
  const double depth = -cam.z();
  if (depth <= kMinDepth) return std::nullopt;
  PixelDepth out;
  out.pixel.x() = view.intrinsics.cx + view.intrinsics.fx * cam.x() / depth;
  out.pixel.y() = view.intrinsics.cy - view.intrinsics.fy * cam.y() / depth;
  out.depth = depth;
  return out;
}

Vec3 unproject(const Vec2& pixel, double depth, const View& view) {
  if (depth <= 0.0)
    throw DegenerateInputError("unproject: depth must be positive");
  Vec3 cam;
  cam.x() = (pixel.x() - view.intrinsics.cx) / view.intrinsics.fx * depth;
  cam.y() = -(pixel.y() - view.intrinsics.cy) / view.intrinsics.fy * depth;
  cam.z() = -depth;
  return view.pose.to_world(cam);
}

PixelRay pixel_ray(const Vec2& pixel, const View& view) {
  // Direction chosen so the parameter along the ray equals pinhole depth.
  Vec3 cam_dir;
  cam_dir.x() = (pixel.x() - view.intrinsics.cx) / view.intrinsics.fx;
  cam_dir.y() = -(pixel.y() - view.intrinsics.cy) / view.intrinsics.fy;
  cam_dir.z() = -1.0;
  PixelRay ray;
  ray.origin = view.pose.camera_center();
  ray.dir = view.pose.rotation.transpose() * cam_dir;
  return ray;
}

OrbitSpec sample_neighbor(const OrbitSpec& current, double step, RngStream& rng,
                          double elevation_jitter) {
  if (std::abs(step) > 45.0)
    throw DegenerateInputError("sample_neighbor: |step| must be <= 45 degrees");
  OrbitSpec next = current;
  next.azimuth = wrap_degrees(current.azimuth + rng.sign() * step);
  const double jitter = rng.uniform(-elevation_jitter, elevation_jitter);
  next.elevation = std::clamp(current.elevation + jitter, -89.0, 89.0);
  return next;
}

std::vector<std::pair<OrbitSpec, OrbitSpec>> sweep_orbits(
    const OrbitSpec& start, double step) {
  if (step <= 0.0) throw DegenerateInputError("sweep: step must be positive");
  const double ratio = 360.0 / step;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 || rounded < 1.0)
    throw DegenerateInputError("sweep: step must divide 360");
  const int n = static_cast<int>(rounded);

  std::vector<std::pair<OrbitSpec, OrbitSpec>> pairs;
  pairs.reserve(n);
  for (int i = 0; i < n; ++i) {
    OrbitSpec a = start;
    OrbitSpec b = start;
    a.azimuth = wrap_degrees(start.azimuth + i * step);
    b.azimuth = wrap_degrees(start.azimuth + (i + 1) * step);
    pairs.emplace_back(a, b);
  }
  return pairs;
}

std::vector<std::pair<View, View>> sweep_sequence(const OrbitSpec& start,
                                                  double step,
                                                  const Intrinsics& intr) {
  const auto orbits = sweep_orbits(start, step);
  std::vector<std::pair<View, View>> views;
  views.reserve(orbits.size());
  for (size_t i = 0; i < orbits.size(); ++i) {
    views.emplace_back(
        orbit_view(orbits[i].first, intr, "sweep_" + std::to_string(i) + "_I"),
        orbit_view(orbits[i].second, intr, "sweep_" + std::to_string(i) + "_J"));
  }
  return views;
}

}  // namespace distill3d
