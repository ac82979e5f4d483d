#include "srelight/synth.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>

#include "srelight/lighting.hpp"

namespace srelight {

TriMesh make_icosphere(int levels, double radius, const Vec3& center) {
  if (levels < 0) throw ParameterError("icosphere subdivision level must be >= 0");
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> unit = {{-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
                            {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
                            {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& v : unit) v.normalize();
  std::vector<std::array<int, 3>> tris = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                          {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                          {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                          {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int level = 0; level < levels; ++level) {
    std::map<std::pair<int, int>, int> midpoints;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      if (auto it = midpoints.find(key); it != midpoints.end()) return it->second;
      unit.push_back((unit[static_cast<std::size_t>(a)] + unit[static_cast<std::size_t>(b)]).normalized());
      const int id = static_cast<int>(unit.size()) - 1;
      midpoints.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(tris.size() * 4);
    for (const auto& t : tris) {
      const int ab = midpoint(t[0], t[1]);
      const int bc = midpoint(t[1], t[2]);
      const int ca = midpoint(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    tris = std::move(next);
  }
  std::vector<Vec3> positions;
  positions.reserve(unit.size());
  for (const auto& n : unit) positions.push_back(center + radius * n);
  return TriMesh(std::move(positions), std::move(unit), std::move(tris));
}

TriMesh make_box(const Vec3& lo, const Vec3& hi) {
  std::vector<Vec3> positions;
  std::vector<Vec3> normals;
  std::vector<std::array<int, 3>> tris;
  auto corner = [&](int i) { return Vec3(i & 1 ? hi.x() : lo.x(), i & 2 ? hi.y() : lo.y(), i & 4 ? hi.z() : lo.z()); };
  // Corner indices per face, counter-clockwise seen from outside.
  const int faces[6][4] = {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
  const Vec3 face_normals[6] = {-Vec3::UnitZ(), Vec3::UnitZ(), -Vec3::UnitY(), Vec3::UnitY(), -Vec3::UnitX(),
                                Vec3::UnitX()};
  for (int f = 0; f < 6; ++f) {
    const int base = static_cast<int>(positions.size());
    for (int k = 0; k < 4; ++k) {
      positions.push_back(corner(faces[f][k]));
      normals.push_back(face_normals[f]);
    }
    tris.push_back({base, base + 1, base + 2});
    tris.push_back({base, base + 2, base + 3});
  }
  return TriMesh(std::move(positions), std::move(normals), std::move(tris));
}

TriMesh make_quad(double x0, double y0, double x1, double y1, double z) {
  std::vector<Vec3> positions = {{x0, y0, z}, {x1, y0, z}, {x1, y1, z}, {x0, y1, z}};
  std::vector<Vec3> normals(4, Vec3::UnitZ());
  return TriMesh(std::move(positions), std::move(normals), {{0, 1, 2}, {0, 2, 3}});
}

TriMesh merge_meshes(const std::vector<TriMesh>& parts) {
  std::vector<Vec3> positions;
  std::vector<Vec3> normals;
  std::vector<std::array<int, 3>> tris;
  for (const auto& part : parts) {
    const int base = static_cast<int>(positions.size());
    positions.insert(positions.end(), part.positions().begin(), part.positions().end());
    normals.insert(normals.end(), part.normals().begin(), part.normals().end());
    for (const auto& t : part.triangles()) tris.push_back({t[0] + base, t[1] + base, t[2] + base});
  }
  return TriMesh(std::move(positions), std::move(normals), std::move(tris));
}

void write_obj(const std::filesystem::path& path, const TriMesh& mesh) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& p : mesh.positions()) std::fprintf(f, "v %.17g %.17g %.17g\n", p.x(), p.y(), p.z());
  for (const auto& n : mesh.normals()) std::fprintf(f, "vn %.17g %.17g %.17g\n", n.x(), n.y(), n.z());
  for (const auto& t : mesh.triangles()) {
    std::fprintf(f, "f %d//%d %d//%d %d//%d\n", t[0] + 1, t[0] + 1, t[1] + 1, t[1] + 1, t[2] + 1, t[2] + 1);
  }
  const bool failed = std::ferror(f) != 0;
  std::fclose(f);
  if (failed) throw IoError("write failed for " + path.string());
}

const std::vector<std::string>& scene_names() {
  static const std::vector<std::string> names = {"sphere", "box_on_plane", "two_spheres", "two_step"};
  return names;
}

namespace {

/// Uniform [0,1) from raw engine bits, identical on every standard library.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

ShadowMask convex_mask(const GBuffer& g, const LightSpec& light) {
  ShadowMask m{ImagePlane::Zero(g.height(), g.width()), g.hit_mask};
  for (Eigen::Index r = 0; r < g.height(); ++r) {
    for (Eigen::Index c = 0; c < g.width(); ++c) {
      if (g.covered(r, c) && g.normal(r, c).dot(light.direction_from(g.position(r, c))) >= 0) m.mask(r, c) = 1;
    }
  }
  return m;
}

/// Mask by testing every triangle for every pixel, no BVH.
ShadowMask exhaustive_mask(const GBuffer& g, const TriMesh& mesh, const LightSpec& light) {
  const ShadowOptions options;
  ShadowMask m{ImagePlane::Zero(g.height(), g.width()), g.hit_mask};
  const double offset = options.feeler_offset * mesh.diagonal();
  for (Eigen::Index r = 0; r < g.height(); ++r) {
    for (Eigen::Index c = 0; c < g.width(); ++c) {
      if (!g.covered(r, c)) continue;
      const Vec3 p = g.position(r, c);
      const Vec3 l = light.direction_from(p);
      if (g.normal(r, c).dot(l) < 0) continue;
      const FaceCulling cull =
          mesh.face_normal(g.triangle_at(r, c)).dot(l) <= 0 ? FaceCulling::BackFaces : FaceCulling::None;
      const Ray feeler(p + offset * l, l);
      bool blocked = false;
      for (int t = 0; t < static_cast<int>(mesh.triangle_count()) && !blocked; ++t) {
        blocked = intersect_triangle(feeler, mesh, t, 0.0, std::numeric_limits<double>::infinity(), cull).has_value();
      }
      if (!blocked) m.mask(r, c) = 1;
    }
  }
  return m;
}

/// Plane pixels are shadowed when the ray toward the light crosses the box.
bool ray_hits_box(const Vec3& origin, const Vec3& dir, const Vec3& lo, const Vec3& hi) {
  double t0 = 0;
  double t1 = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    if (dir[k] == 0) {
      if (origin[k] < lo[k] || origin[k] > hi[k]) return false;
      continue;
    }
    double a = (lo[k] - origin[k]) / dir[k];
    double b = (hi[k] - origin[k]) / dir[k];
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
  }
  return t0 <= t1;
}

ColorImaged render_source(const GBuffer& g, const LightSpec& light, const ShadowMask& mask, double ambient,
                          const Vec3& reference, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const ShLighting sh = inject_ambient(project_light(light, reference), ambient);
  const ImagePlane shading = shade(g, sh, &mask);
  const Vec3 albedo(0.85, 0.66, 0.56);
  ImagePlane ch[3];
  for (auto& plane : ch) plane = ImagePlane::Constant(g.height(), g.width(), 0.05);
  for (Eigen::Index r = 0; r < g.height(); ++r) {
    for (Eigen::Index c = 0; c < g.width(); ++c) {
      const double jitter = 1.0 + 0.08 * (unit_uniform(rng) - 0.5);
      if (!g.covered(r, c)) continue;
      for (int k = 0; k < 3; ++k) ch[k](r, c) = std::clamp(albedo[k] * jitter * shading(r, c), 0.0, 1.0);
    }
  }
  return ColorImaged(ColorSpace::RGB, std::move(ch[0]), std::move(ch[1]), std::move(ch[2]));
}

SynthScene sphere_scene(int width, int height, std::uint64_t seed) {
  SynthScene s;
  s.name = "sphere";
  s.width = width;
  s.height = height;
  s.mesh = make_icosphere(3);
  s.pose.scale = 0.4 * std::min(width, height);
  s.pose.translation = Vec3(width / 2.0, height / 2.0, 0.0);
  s.source_light = LightSpec::directional(Vec3::UnitZ(), 0.7);
  s.target_light = LightSpec::directional(Vec3(0.9, -0.2, 0.3).normalized(), 0.7);
  s.ambient = 0.15;
  const TriMesh posed = apply_pose(*s.mesh, s.pose);
  const GBuffer g = rasterize_geometry(posed, width, height);
  s.source_mask = convex_mask(g, s.source_light);
  s.target_mask = convex_mask(g, s.target_light);
  s.source = render_source(g, s.source_light, s.source_mask, s.ambient, posed.centroid(), seed);
  return s;
}

SynthScene box_scene(int width, int height, std::uint64_t seed) {
  SynthScene s;
  s.name = "box_on_plane";
  s.width = width;
  s.height = height;
  // Edges on quarter pixels never pass through a pixel center.
  auto edge = [](double v) { return std::floor(v) + 0.25; };
  const Vec3 lo(edge(0.30 * width), edge(0.35 * height), 6.0);
  const Vec3 hi(edge(0.55 * width), edge(0.60 * height), 30.0);
  s.mesh = merge_meshes({make_quad(-1.0, -1.0, width + 1.0, height + 1.0, 0.0), make_box(lo, hi)});
  s.source_light = LightSpec::directional(Vec3(0.1, 0.05, 1.0).normalized(), 0.7);
  s.target_light = LightSpec::directional(Vec3(0.6, 0.25, 0.76).normalized(), 0.7);
  s.ambient = 0.15;
  const GBuffer g = rasterize_geometry(*s.mesh, width, height);
  auto analytic = [&](const LightSpec& light) {
    ShadowMask m{ImagePlane::Zero(height, width), ImagePlane::Ones(height, width)};
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        const double x = c + 0.5;
        const double y = r + 0.5;
        const bool on_top = x > lo.x() && x < hi.x() && y > lo.y() && y < hi.y();
        if (on_top) {
          m.mask(r, c) = light.direction.z() >= 0 ? 1.0 : 0.0;
        } else {
          m.mask(r, c) = ray_hits_box(Vec3(x, y, 0.0), light.direction, lo, hi) ? 0.0 : 1.0;
        }
      }
    }
    return m;
  };
  s.source_mask = analytic(s.source_light);
  s.target_mask = analytic(s.target_light);
  s.source = render_source(g, s.source_light, s.source_mask, s.ambient, s.mesh->centroid(), seed);
  return s;
}

SynthScene two_spheres_scene(int width, int height, std::uint64_t seed) {
  SynthScene s;
  s.name = "two_spheres";
  s.width = width;
  s.height = height;
  const double unit = std::min(width, height);
  s.mesh = merge_meshes({make_icosphere(2, 0.32 * unit, Vec3(0.55 * width, 0.55 * height, 0.0)),
                         make_icosphere(1, 0.12 * unit, Vec3(0.3 * width, 0.3 * height, 0.45 * unit))});
  s.source_light = LightSpec::directional(Vec3(0.0, 0.0, 1.0), 0.7);
  s.target_light = LightSpec::directional(Vec3(-0.45, -0.45, 0.77).normalized(), 0.7);
  s.ambient = 0.15;
  const GBuffer g = rasterize_geometry(*s.mesh, width, height);
  s.source_mask = exhaustive_mask(g, *s.mesh, s.source_light);
  s.target_mask = exhaustive_mask(g, *s.mesh, s.target_light);
  s.source = render_source(g, s.source_light, s.source_mask, s.ambient, s.mesh->centroid(), seed);
  return s;
}

SynthScene two_step_scene(int width, int height) {
  if (width < 96 || height < 24) throw ParameterError("two_step needs at least 96x24 pixels");
  SynthScene s;
  s.name = "two_step";
  s.width = width;
  s.height = height;
  const int left_edge = static_cast<int>(0.3 * width);
  const int right_edge = static_cast<int>(0.7 * width);
  const double shadow = 0.2;
  const double h = 0.2;
  ShadowMask m{ImagePlane::Ones(height, width), ImagePlane::Ones(height, width)};
  ImagePlane y = ImagePlane::Constant(height, width, shadow);
  for (int c = 0; c < width; ++c) {
    if (c >= left_edge && c < right_edge) {
      m.mask.col(c).setZero();
    } else {
      y.col(c).setConstant(c < left_edge ? shadow + h : shadow + 2 * h);
    }
  }
  s.source_mask = m;
  s.target_mask = m;
  s.source = ColorImaged(ColorSpace::RGB, y, y, y);
  return s;
}

}  // namespace

SynthScene make_scene(const std::string& name, int width, int height, std::uint64_t seed) {
  if (width < 1 || height < 1) throw ParameterError("scene size must be positive");
  if (name == "sphere") return sphere_scene(width, height, seed);
  if (name == "box_on_plane") return box_scene(width, height, seed);
  if (name == "two_spheres") return two_spheres_scene(width, height, seed);
  if (name == "two_step") return two_step_scene(width, height);
  throw ParameterError("unknown scene \"" + name + "\"");
}

}  // namespace srelight
