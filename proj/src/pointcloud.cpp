// Copyright Contributors to the distill3d Project
// SPDX-License-Identifier: Apache-2.0

#include "distill3d/pointcloud.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace distill3d {

namespace {

struct PlyProperty {
  std::string type;
  std::string name;
};

size_t scalar_size(const std::string& type) {
  if (type == "float" || type == "float32") return 4;
  if (type == "double" || type == "float64") return 8;
  if (type == "uchar" || type == "uint8") return 1;
  if (type == "char" || type == "int8") return 1;
  if (type == "short" || type == "int16" || type == "ushort" ||
      type == "uint16")
    return 2;
  if (type == "int" || type == "int32" || type == "uint" || type == "uint32")
    return 4;
  return 0;
}

double parse_scalar_le(const char* bytes, const std::string& type) {
  if (type == "float" || type == "float32") {
    float v;
    std::memcpy(&v, bytes, 4);
    return v;
  }
  if (type == "double" || type == "float64") {
    double v;
    std::memcpy(&v, bytes, 8);
    return v;
  }
  if (type == "uchar" || type == "uint8")
    return static_cast<double>(static_cast<unsigned char>(bytes[0]));
  if (type == "char" || type == "int8")
    return static_cast<double>(static_cast<signed char>(bytes[0]));
  if (type == "short" || type == "int16") {
    int16_t v;
    std::memcpy(&v, bytes, 2);
    return v;
  }
  if (type == "ushort" || type == "uint16") {
    uint16_t v;
    std::memcpy(&v, bytes, 2);
    return v;
  }
  if (type == "int" || type == "int32") {
    int32_t v;
    std::memcpy(&v, bytes, 4);
    return v;
  }
  uint32_t v;
  std::memcpy(&v, bytes, 4);
  return v;
}

}  // namespace

PointCloud load_ply(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("load_ply: cannot open " + path);

  std::string line;
  if (!std::getline(in, line) || line.substr(0, 3) != "ply")
    throw PlyError(PlyError::Kind::MalformedHeader,
                   "load_ply: missing 'ply' magic in " + path);

  bool binary = false;
  bool format_seen = false;
  bool in_vertex_element = false;
  bool vertex_seen = false;
  size_t vertex_count = 0;
  std::vector<PlyProperty> props;
  bool header_done = false;

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "comment" || tok.empty()) continue;
    if (tok == "format") {
      std::string fmt, version;
      ls >> fmt >> version;
      if (fmt == "ascii")
        binary = false;
      else if (fmt == "binary_little_endian")
        binary = true;
      else
        throw PlyError(PlyError::Kind::MalformedHeader,
                       "load_ply: unsupported format '" + fmt + "'");
      format_seen = true;
    } else if (tok == "element") {
      std::string name;
      size_t count = 0;
      ls >> name >> count;
      if (name == "vertex") {
        if (vertex_seen)
          throw PlyError(PlyError::Kind::MalformedHeader,
                         "load_ply: duplicate vertex element");
        vertex_seen = true;
        in_vertex_element = true;
        vertex_count = count;
      } else {
        if (!vertex_seen)
          throw PlyError(PlyError::Kind::UnsupportedProperty,
                         "load_ply: element '" + name +
                             "' precedes vertex data; only vertex-first "
                             "layouts are supported");
        in_vertex_element = false;  // trailing elements are ignored
      }
    } else if (tok == "property") {
      if (!in_vertex_element) continue;
      std::string type;
      ls >> type;
      if (type == "list")
        throw PlyError(PlyError::Kind::UnsupportedProperty,
                       "load_ply: list property in vertex element");
      std::string name;
      ls >> name;
      if (scalar_size(type) == 0)
        throw PlyError(PlyError::Kind::UnsupportedProperty,
                       "load_ply: unsupported property type '" + type + "'");
      props.push_back({type, name});
    } else if (tok == "end_header") {
      header_done = true;
      break;
    } else {
      throw PlyError(PlyError::Kind::MalformedHeader,
                     "load_ply: unexpected header token '" + tok + "'");
    }
  }
  if (!header_done || !format_seen)
    throw PlyError(PlyError::Kind::MalformedHeader,
                   "load_ply: header not terminated in " + path);
  if (!vertex_seen)
    throw PlyError(PlyError::Kind::MalformedHeader,
                   "load_ply: no vertex element in " + path);

  int ix = -1, iy = -1, iz = -1, ir = -1, ig = -1, ib = -1;
  for (size_t i = 0; i < props.size(); ++i) {
    const auto& p = props[i];
    if (p.name == "x") ix = static_cast<int>(i);
    if (p.name == "y") iy = static_cast<int>(i);
    if (p.name == "z") iz = static_cast<int>(i);
    if (p.name == "red") ir = static_cast<int>(i);
    if (p.name == "green") ig = static_cast<int>(i);
    if (p.name == "blue") ib = static_cast<int>(i);
  }
  if (ix < 0 || iy < 0 || iz < 0)
    throw PlyError(PlyError::Kind::MalformedHeader,
                   "load_ply: vertex element lacks x/y/z in " + path);
  const bool has_colors = ir >= 0 && ig >= 0 && ib >= 0;

  PointCloud cloud;
  cloud.positions.reserve(vertex_count);
  if (has_colors) cloud.colors.reserve(vertex_count);

  std::vector<double> row(props.size());
  if (binary) {
    size_t stride = 0;
    for (const auto& p : props) stride += scalar_size(p.type);
    std::vector<char> buf(stride);
    for (size_t v = 0; v < vertex_count; ++v) {
      in.read(buf.data(), static_cast<std::streamsize>(stride));
      if (in.gcount() != static_cast<std::streamsize>(stride))
        throw PlyError(PlyError::Kind::TruncatedBody,
                       "load_ply: truncated binary body in " + path);
      size_t off = 0;
      for (size_t i = 0; i < props.size(); ++i) {
        row[i] = parse_scalar_le(buf.data() + off, props[i].type);
        off += scalar_size(props[i].type);
      }
      cloud.positions.emplace_back(row[ix], row[iy], row[iz]);
      if (has_colors)
        cloud.colors.emplace_back(row[ir] / 255.0, row[ig] / 255.0,
                                  row[ib] / 255.0);
    }
  } else {
    for (size_t v = 0; v < vertex_count; ++v) {
      if (!std::getline(in, line))
        throw PlyError(PlyError::Kind::TruncatedBody,
                       "load_ply: truncated ascii body in " + path);
      std::istringstream ls(line);
      for (size_t i = 0; i < props.size(); ++i) {
        if (!(ls >> row[i]))
          throw PlyError(PlyError::Kind::TruncatedBody,
                         "load_ply: short vertex line in " + path);
      }
      cloud.positions.emplace_back(row[ix], row[iy], row[iz]);
      if (has_colors)
        cloud.colors.emplace_back(row[ir] / 255.0, row[ig] / 255.0,
                                  row[ib] / 255.0);
    }
  }
  return cloud;
}

void save_ply(const std::string& path, const PointCloud& cloud) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("save_ply: cannot open " + path);
  const bool colors = cloud.has_colors();
  out << "ply\nformat binary_little_endian 1.0\n";
  out << "element vertex " << cloud.size() << "\n";
  out << "property float x\nproperty float y\nproperty float z\n";
  if (colors)
    out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out << "end_header\n";
  for (size_t i = 0; i < cloud.size(); ++i) {
    float xyz[3] = {static_cast<float>(cloud.positions[i].x()),
                    static_cast<float>(cloud.positions[i].y()),
                    static_cast<float>(cloud.positions[i].z())};
    out.write(reinterpret_cast<const char*>(xyz), 12);
    if (colors) {
      unsigned char rgb[3];
      for (int c = 0; c < 3; ++c) {
        const double v = std::clamp(cloud.colors[i][c], 0.0, 1.0);
        rgb[c] = static_cast<unsigned char>(std::lround(v * 255.0));
      }
      out.write(reinterpret_cast<const char*>(rgb), 3);
    }
  }
  if (!out) throw IoError("save_ply: write failed for " + path);
}

NormalizeResult normalize_unit_sphere(const PointCloud& cloud) {
  if (cloud.positions.empty())
    throw DegenerateInputError("normalize_unit_sphere: empty cloud");
  Vec3 center = Vec3::Zero();
  for (const auto& p : cloud.positions) center += p;
  center /= static_cast<double>(cloud.size());

  double max_r = 0.0;
  for (const auto& p : cloud.positions)
    max_r = std::max(max_r, (p - center).norm());

  NormalizeResult res;
  res.center = center;
  res.scale = max_r > 0.0 ? 1.0 / max_r : 1.0;
  res.cloud.positions.reserve(cloud.size());
  for (const auto& p : cloud.positions)
    res.cloud.positions.push_back(res.scale * (p - center));
  res.cloud.colors = cloud.colors;
  return res;
}

DepthMap render_depth(const PointCloud& cloud, const View& view,
                      double splat_radius) {
  if (splat_radius < 0)
    throw DegenerateInputError("render_depth: negative splat radius");
  const int H = view.intrinsics.height;
  const int W = view.intrinsics.width;
  DepthMap depth(H, W);
  for (const auto& p : cloud.positions) {
    const auto proj = project(p, view);
    if (!proj) continue;
    const double px = proj->pixel.x();
    const double py = proj->pixel.y();
    if (splat_radius == 0.0) {
      const int x = static_cast<int>(std::lround(px));
      const int y = static_cast<int>(std::lround(py));
      if (x < 0 || x >= W || y < 0 || y >= H) continue;
      double& d = depth.at(y, x);
      if (d <= 0.0 || proj->depth < d) d = proj->depth;
      continue;
    }
    const int x0 = static_cast<int>(std::ceil(px - splat_radius));
    const int x1 = static_cast<int>(std::floor(px + splat_radius));
    const int y0 = static_cast<int>(std::ceil(py - splat_radius));
    const int y1 = static_cast<int>(std::floor(py + splat_radius));
    const double r2 = splat_radius * splat_radius;
    for (int y = std::max(y0, 0); y <= std::min(y1, H - 1); ++y) {
      for (int x = std::max(x0, 0); x <= std::min(x1, W - 1); ++x) {
        const double dx = x - px;
        const double dy = y - py;
        if (dx * dx + dy * dy > r2) continue;
        double& d = depth.at(y, x);
        if (d <= 0.0 || proj->depth < d) d = proj->depth;
      }
    }
  }
  return depth;
}

std::pair<Image, DepthMap> render_rgbd(const PointCloud& cloud,
                                       const View& view, double splat_radius,
                                       const Vec3& background) {
  const int H = view.intrinsics.height;
  const int W = view.intrinsics.width;
  Image img(H, W);
  for (int y = 0; y < H; ++y)
    for (int x = 0; x < W; ++x)
      for (int c = 0; c < 3; ++c) img.at(y, x, c) = background[c];
  DepthMap depth(H, W);

  const Vec3 gray(0.5, 0.5, 0.5);
  for (size_t i = 0; i < cloud.size(); ++i) {
    const auto proj = project(cloud.positions[i], view);
    if (!proj) continue;
    const Vec3& color = cloud.has_colors() ? cloud.colors[i] : gray;
    const double px = proj->pixel.x();
    const double py = proj->pixel.y();
    auto write = [&](int x, int y) {
      double& d = depth.at(y, x);
      if (d <= 0.0 || proj->depth < d) {
        d = proj->depth;
        for (int c = 0; c < 3; ++c) img.at(y, x, c) = color[c];
      }
    };
    if (splat_radius == 0.0) {
      const int x = static_cast<int>(std::lround(px));
      const int y = static_cast<int>(std::lround(py));
      if (x >= 0 && x < W && y >= 0 && y < H) write(x, y);
      continue;
    }
    const int x0 = static_cast<int>(std::ceil(px - splat_radius));
    const int x1 = static_cast<int>(std::floor(px + splat_radius));
    const int y0 = static_cast<int>(std::ceil(py - splat_radius));
    const int y1 = static_cast<int>(std::floor(py + splat_radius));
    const double r2 = splat_radius * splat_radius;
    for (int y = std::max(y0, 0); y <= std::min(y1, H - 1); ++y) {
      for (int x = std::max(x0, 0); x <= std::min(x1, W - 1); ++x) {
        const double dx = x - px;
        const double dy = y - py;
        if (dx * dx + dy * dy > r2) continue;
        write(x, y);
      }
    }
  }
  return {std::move(img), std::move(depth)};
}

SceneKind scene_kind_from_string(const std::string& name) {
  if (name == "sphere") return SceneKind::Sphere;
  if (name == "two_spheres") return SceneKind::TwoSpheres;
  if (name == "box_plus_sphere") return SceneKind::BoxPlusSphere;
  throw ConfigError("unknown scene kind '" + name + "'");
}

std::string to_string(SceneKind kind) {
  switch (kind) {
    case SceneKind::Sphere:
      return "sphere";
    case SceneKind::TwoSpheres:
      return "two_spheres";
    case SceneKind::BoxPlusSphere:
      return "box_plus_sphere";
  }
  return "?";
}

namespace {

Vec3 clamp01(const Vec3& v) {
  return Vec3(std::clamp(v.x(), 0.02, 0.98), std::clamp(v.y(), 0.02, 0.98),
              std::clamp(v.z(), 0.02, 0.98));
}

Vec3 sample_sphere_surface(RngStream& rng) {
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * M_PI);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Vec3(r * std::cos(phi), r * std::sin(phi), z);
}

void add_sphere(PointCloud& cloud, const Vec3& center, double radius,
                size_t n, RngStream& rng) {
  for (size_t i = 0; i < n; ++i)
    cloud.positions.push_back(center + radius * sample_sphere_surface(rng));
}

void add_box(PointCloud& cloud, const Vec3& center, const Vec3& half,
             size_t n, RngStream& rng) {
  // Face-area-weighted surface sampling.
  const double ax = half.y() * half.z();  // +-x faces
  const double ay = half.x() * half.z();
  const double az = half.x() * half.y();
  const double total = 2 * (ax + ay + az);
  for (size_t i = 0; i < n; ++i) {
    double pick = rng.uniform(0.0, total);
    const int sign = rng.sign();
    Vec3 p;
    const double u = rng.uniform(-1.0, 1.0);
    const double v = rng.uniform(-1.0, 1.0);
    if (pick < 2 * ax) {
      p = Vec3(sign * half.x(), u * half.y(), v * half.z());
    } else if (pick < 2 * (ax + ay)) {
      p = Vec3(u * half.x(), sign * half.y(), v * half.z());
    } else {
      p = Vec3(u * half.x(), v * half.y(), sign * half.z());
    }
    cloud.positions.push_back(center + p);
  }
}

}  // namespace

SynthScene synth_scene(SceneKind kind, double points_per_unit,
                       RngStream& rng) {
  if (points_per_unit <= 0)
    throw DegenerateInputError("synth_scene: density must be positive");
  SynthScene scene;
  switch (kind) {
    case SceneKind::Sphere: {
      const size_t n =
          static_cast<size_t>(points_per_unit * 4.0 * M_PI) + 1;
      add_sphere(scene.cloud, Vec3::Zero(), 1.0, n, rng);
      scene.colorizer = [](const Vec3& p) {
        return clamp01(Vec3(0.72 + 0.10 * std::sin(3.0 * p.x()),
                            0.38 + 0.10 * std::sin(3.0 * p.y()),
                            0.30 + 0.10 * std::sin(3.0 * p.z())));
      };
      break;
    }
    case SceneKind::TwoSpheres: {
      const Vec3 ca(-0.6, 0, 0), cb(0.6, 0, 0);
      const size_t n =
          static_cast<size_t>(points_per_unit * 4.0 * M_PI * 0.25) + 1;
      add_sphere(scene.cloud, ca, 0.5, n, rng);
      add_sphere(scene.cloud, cb, 0.5, n, rng);
      scene.colorizer = [ca, cb](const Vec3& p) {
        // Color in coordinates local to the nearest sphere so both spheres
        // look identical.
        const Vec3 q = ((p - ca).norm() < (p - cb).norm()) ? p - ca : p - cb;
        return clamp01(Vec3(0.68 + 0.10 * std::sin(4.0 * q.x()),
                            0.42 + 0.10 * std::sin(4.0 * q.y()),
                            0.34 + 0.10 * std::sin(4.0 * q.z())));
      };
      break;
    }
    case SceneKind::BoxPlusSphere: {
      const Vec3 box_c(-0.35, -0.15, 0.0), box_h(0.45, 0.3, 0.45);
      const Vec3 sph_c(0.4, 0.2, 0.0);
      const double sph_r = 0.4;
      const double box_area =
          8 * (box_h.x() * box_h.y() + box_h.y() * box_h.z() +
               box_h.x() * box_h.z());
      const size_t nb = static_cast<size_t>(points_per_unit * box_area) + 1;
      const size_t ns =
          static_cast<size_t>(points_per_unit * 4.0 * M_PI * sph_r * sph_r) +
          1;
      add_box(scene.cloud, box_c, box_h, nb, rng);
      add_sphere(scene.cloud, sph_c, sph_r, ns, rng);
      scene.colorizer = [](const Vec3& p) {
        return clamp01(Vec3(0.45 + 0.10 * std::sin(3.0 * p.x()),
                            0.55 + 0.10 * std::sin(3.0 * p.y()),
                            0.65 + 0.10 * std::sin(3.0 * p.z())));
      };
      break;
    }
  }
  scene.cloud.colors.reserve(scene.cloud.size());
  for (const auto& p : scene.cloud.positions)
    scene.cloud.colors.push_back(scene.colorizer(p));
  return scene;
}

}  // namespace distill3d
