#include "srelight/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

#include "srelight/parallel.hpp"

namespace srelight {

// --- Pose -------------------------------------------------------------------

Pose Pose::from_matrix(const Eigen::Matrix4d& m) {
  if (m(3, 0) != 0 || m(3, 1) != 0 || m(3, 2) != 0 || m(3, 3) != 1) {
    throw ParameterError("pose matrix: bottom row must be [0 0 0 1]");
  }
  const Mat3 linear = m.topLeftCorner<3, 3>();
  const double det = linear.determinant();
  if (!(det > 0)) throw ParameterError("pose matrix: linear block must have positive determinant");
  Pose p;
  p.scale = std::cbrt(det);
  p.rotation = linear / p.scale;
  p.translation = m.topRightCorner<3, 1>();
  p.validate();
  return p;
}

void Pose::validate() const {
  if (!(scale > 0) || !std::isfinite(scale)) throw ParameterError("pose scale must be positive");
  const double ortho = (rotation.transpose() * rotation - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (!(ortho <= 1e-5)) throw ParameterError("pose rotation is not orthonormal");
  if (rotation.determinant() < 0) throw ParameterError("pose rotation is a reflection");
  if (!translation.allFinite()) throw ParameterError("pose translation is not finite");
}

Pose compose(const Pose& outer, const Pose& inner) {
  Pose p;
  p.rotation = outer.rotation * inner.rotation;
  p.scale = outer.scale * inner.scale;
  p.translation = outer.scale * (outer.rotation * inner.translation) + outer.translation;
  return p;
}

Ray::Ray(const Vec3& o, const Vec3& d) : origin(o), direction(d) {
  if (!(std::abs(d.norm() - 1.0) <= 1e-6)) throw DomainError("ray direction must be unit length");
}

// --- BVH --------------------------------------------------------------------

namespace {

Box3 padded(Box3 box) {
  // Conservative padding so rounding in the slab test never drops a
  // triangle that the watertight test would accept.
  const double mag = std::max(box.min().cwiseAbs().maxCoeff(), box.max().cwiseAbs().maxCoeff());
  const double pad = 1e-9 * (1.0 + mag);
  box.min().array() -= pad;
  box.max().array() += pad;
  return box;
}

}  // namespace

Bvh::Bvh(const std::vector<Vec3>& positions, const std::vector<std::array<int, 3>>& triangles) {
  const int n = static_cast<int>(triangles.size());
  std::vector<Box3> boxes(triangles.size());
  std::vector<Vec3> centroids(triangles.size());
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    Box3 b;
    for (int k : triangles[i]) b.extend(positions[static_cast<std::size_t>(k)]);
    boxes[i] = b;
    centroids[i] = b.center();
  }
  std::vector<int> items(triangles.size());
  for (int i = 0; i < n; ++i) items[static_cast<std::size_t>(i)] = i;
  nodes_.reserve(2 * triangles.size() / kLeafSize + 2);
  if (n > 0) build(items, 0, n, boxes, centroids);
  order_ = std::move(items);
}

int Bvh::build(std::vector<int>& items, int begin, int end, const std::vector<Box3>& boxes,
               const std::vector<Vec3>& centroids) {
  const int index = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  Box3 box;
  Box3 centroid_box;
  for (int i = begin; i < end; ++i) {
    box.extend(boxes[static_cast<std::size_t>(items[static_cast<std::size_t>(i)])]);
    centroid_box.extend(centroids[static_cast<std::size_t>(items[static_cast<std::size_t>(i)])]);
  }
  nodes_[static_cast<std::size_t>(index)].box = padded(box);

  if (end - begin <= kLeafSize) {
    nodes_[static_cast<std::size_t>(index)].first = begin;
    nodes_[static_cast<std::size_t>(index)].count = end - begin;
    return index;
  }

  Eigen::Index axis = 0;
  centroid_box.diagonal().maxCoeff(&axis);
  const int mid = begin + (end - begin) / 2;
  std::nth_element(items.begin() + begin, items.begin() + mid, items.begin() + end, [&](int a, int b) {
    const double ca = centroids[static_cast<std::size_t>(a)][axis];
    const double cb = centroids[static_cast<std::size_t>(b)][axis];
    return ca < cb || (ca == cb && a < b);
  });
  const int left = build(items, begin, mid, boxes, centroids);
  const int right = build(items, mid, end, boxes, centroids);
  nodes_[static_cast<std::size_t>(index)].left = left;
  nodes_[static_cast<std::size_t>(index)].right = right;
  return index;
}

// --- TriMesh ----------------------------------------------------------------

TriMesh::TriMesh(std::vector<Vec3> positions, std::vector<Vec3> normals, std::vector<std::array<int, 3>> triangles)
    : positions_(std::move(positions)), normals_(std::move(normals)), triangles_(std::move(triangles)) {
  if (triangles_.empty()) throw EmptyMeshError("mesh has no triangles");
  if (normals_.size() != positions_.size()) throw StructuralError("mesh needs exactly one normal per vertex");
  const int nv = static_cast<int>(positions_.size());
  for (const auto& tri : triangles_) {
    for (int k : tri) {
      if (k < 0 || k >= nv) throw StructuralError("triangle index " + std::to_string(k) + " out of range");
    }
  }
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (!positions_[i].allFinite()) throw StructuralError("non-finite vertex position");
    const double len = normals_[i].norm();
    if (!(len > 0) || !std::isfinite(len)) throw StructuralError("zero-length normal at vertex " + std::to_string(i));
    normals_[i] /= len;
  }
  face_normals_.reserve(triangles_.size());
  for (const auto& tri : triangles_) {
    const Vec3& a = positions_[static_cast<std::size_t>(tri[0])];
    const Vec3& b = positions_[static_cast<std::size_t>(tri[1])];
    const Vec3& c = positions_[static_cast<std::size_t>(tri[2])];
    Vec3 n = (b - a).cross(c - a);
    const double len = n.norm();
    if (len > 0) n /= len;
    const Vec3 shading = normals_[static_cast<std::size_t>(tri[0])] + normals_[static_cast<std::size_t>(tri[1])] +
                         normals_[static_cast<std::size_t>(tri[2])];
    if (n.dot(shading) < 0) n = -n;
    face_normals_.push_back(n);
  }
  for (const auto& p : positions_) bounds_.extend(p);
  bvh_ = Bvh(positions_, triangles_);
}

Vec3 TriMesh::centroid() const {
  Vec3 sum = Vec3::Zero();
  for (const auto& p : positions_) sum += p;
  return sum / static_cast<double>(positions_.size());
}

std::vector<Vec3> area_weighted_normals(const std::vector<Vec3>& positions,
                                        const std::vector<std::array<int, 3>>& triangles) {
  std::vector<Vec3> normals(positions.size(), Vec3::Zero());
  for (const auto& tri : triangles) {
    const Vec3& a = positions[static_cast<std::size_t>(tri[0])];
    const Vec3& b = positions[static_cast<std::size_t>(tri[1])];
    const Vec3& c = positions[static_cast<std::size_t>(tri[2])];
    const Vec3 weighted = (b - a).cross(c - a);  // length is twice the area
    for (int k : tri) normals[static_cast<std::size_t>(k)] += weighted;
  }
  for (auto& n : normals) {
    const double len = n.norm();
    n = len > 0 ? Vec3(n / len) : Vec3::UnitZ();
  }
  return normals;
}

// --- OBJ --------------------------------------------------------------------

namespace {

int resolve_index(const std::string& token, std::size_t count, int line) {
  int value = 0;
  try {
    std::size_t used = 0;
    value = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
  } catch (const std::exception&) {
    throw ParseError("bad index '" + token + "'", line);
  }
  const long resolved = value > 0 ? value - 1 : static_cast<long>(count) + value;
  if (value == 0 || resolved < 0 || resolved >= static_cast<long>(count)) {
    throw ParseError("index " + token + " out of range", line);
  }
  return static_cast<int>(resolved);
}

Vec3 read_vec3(std::istringstream& fields, int line) {
  Vec3 v;
  for (int k = 0; k < 3; ++k) {
    if (!(fields >> v[k])) throw ParseError("expected three numbers", line);
  }
  return v;
}

struct Corner {
  int v = -1;
  int vn = -1;
};

}  // namespace

TriMesh parse_obj(std::istream& in) {
  std::vector<Vec3> positions;
  std::vector<Vec3> file_normals;
  std::vector<std::array<Corner, 3>> faces;
  bool all_have_normals = true;

  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (const auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
    std::istringstream fields(text);
    std::string tag;
    if (!(fields >> tag)) continue;
    if (tag == "v") {
      positions.push_back(read_vec3(fields, line));
    } else if (tag == "vn") {
      file_normals.push_back(read_vec3(fields, line));
    } else if (tag == "f") {
      std::vector<Corner> poly;
      std::string token;
      while (fields >> token) {
        Corner corner;
        const auto s1 = token.find('/');
        corner.v = resolve_index(token.substr(0, s1), positions.size(), line);
        if (s1 != std::string::npos) {
          const auto s2 = token.find('/', s1 + 1);
          if (s2 != std::string::npos && s2 + 1 < token.size()) {
            corner.vn = resolve_index(token.substr(s2 + 1), file_normals.size(), line);
          }
        }
        if (corner.vn < 0) all_have_normals = false;
        poly.push_back(corner);
      }
      if (poly.size() < 3) throw ParseError("face needs at least three vertices", line);
      for (std::size_t k = 1; k + 1 < poly.size(); ++k) faces.push_back({poly[0], poly[k], poly[k + 1]});
    } else if (tag == "vt" || tag == "vp" || tag == "o" || tag == "g" || tag == "s" || tag == "usemtl" ||
               tag == "mtllib" || tag == "l" || tag == "p") {
      continue;
    } else {
      throw ParseError("unknown record '" + tag + "'", line);
    }
  }
  if (faces.empty()) throw EmptyMeshError("OBJ contains no faces");

  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(faces.size());
  if (all_have_normals) {
    // One output vertex per distinct (position, normal) pair.
    std::vector<Vec3> out_positions;
    std::vector<Vec3> out_normals;
    std::vector<std::pair<std::pair<int, int>, int>> seen;
    auto vertex_for = [&](const Corner& c) {
      const std::pair<int, int> key{c.v, c.vn};
      auto it = std::lower_bound(seen.begin(), seen.end(), key,
                                 [](const auto& entry, const auto& k) { return entry.first < k; });
      if (it != seen.end() && it->first == key) return it->second;
      const int id = static_cast<int>(out_positions.size());
      out_positions.push_back(positions[static_cast<std::size_t>(c.v)]);
      out_normals.push_back(file_normals[static_cast<std::size_t>(c.vn)]);
      seen.insert(it, {key, id});
      return id;
    };
    for (const auto& f : faces) triangles.push_back({vertex_for(f[0]), vertex_for(f[1]), vertex_for(f[2])});
    return TriMesh(std::move(out_positions), std::move(out_normals), std::move(triangles));
  }
  for (const auto& f : faces) triangles.push_back({f[0].v, f[1].v, f[2].v});
  auto normals = area_weighted_normals(positions, triangles);
  return TriMesh(std::move(positions), std::move(normals), std::move(triangles));
}

TriMesh load_obj(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return parse_obj(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

TriMesh apply_pose(const TriMesh& mesh, const Pose& pose) {
  pose.validate();
  std::vector<Vec3> positions;
  std::vector<Vec3> normals;
  positions.reserve(mesh.positions().size());
  normals.reserve(mesh.normals().size());
  for (const auto& p : mesh.positions()) positions.push_back(pose.apply(p));
  for (const auto& n : mesh.normals()) normals.push_back(pose.rotation * n);
  return TriMesh(std::move(positions), std::move(normals), mesh.triangles());
}

// --- Intersection -----------------------------------------------------------

std::optional<Hit> intersect_triangle(const Ray& ray, const TriMesh& mesh, int tri, double t_min, double t_max,
                                      FaceCulling cull) {
  const auto& idx = mesh.triangles()[static_cast<std::size_t>(tri)];
  if (cull == FaceCulling::BackFaces && mesh.face_normal(tri).dot(ray.direction) > 0) return std::nullopt;

  // Watertight test: shear so the ray runs along +z, then evaluate the 2D
  // edge functions. Shared edges give consistent signs on both triangles.
  const Vec3& d = ray.direction;
  int kz = 0;
  d.cwiseAbs().maxCoeff(&kz);
  int kx = (kz + 1) % 3;
  int ky = (kx + 1) % 3;
  if (d[kz] < 0) std::swap(kx, ky);
  const double sx = d[kx] / d[kz];
  const double sy = d[ky] / d[kz];
  const double sz = 1.0 / d[kz];

  const Vec3 a = mesh.positions()[static_cast<std::size_t>(idx[0])] - ray.origin;
  const Vec3 b = mesh.positions()[static_cast<std::size_t>(idx[1])] - ray.origin;
  const Vec3 c = mesh.positions()[static_cast<std::size_t>(idx[2])] - ray.origin;
  const double ax = a[kx] - sx * a[kz];
  const double ay = a[ky] - sy * a[kz];
  const double bx = b[kx] - sx * b[kz];
  const double by = b[ky] - sy * b[kz];
  const double cx = c[kx] - sx * c[kz];
  const double cy = c[ky] - sy * c[kz];

  const double u = cx * by - cy * bx;
  const double v = ax * cy - ay * cx;
  const double w = bx * ay - by * ax;
  if ((u < 0 || v < 0 || w < 0) && (u > 0 || v > 0 || w > 0)) return std::nullopt;
  const double det = u + v + w;
  if (det == 0) return std::nullopt;

  const double t = (u * sz * a[kz] + v * sz * b[kz] + w * sz * c[kz]) / det;
  if (!(t > t_min && t < t_max)) return std::nullopt;

  Hit hit;
  hit.t = t;
  hit.triangle = tri;
  hit.barycentric = Vec3(u, v, w) / det;
  hit.position = ray.origin + t * ray.direction;
  const auto& n = mesh.normals();
  Vec3 shading = hit.barycentric[0] * n[static_cast<std::size_t>(idx[0])] +
                 hit.barycentric[1] * n[static_cast<std::size_t>(idx[1])] +
                 hit.barycentric[2] * n[static_cast<std::size_t>(idx[2])];
  const double len = shading.norm();
  hit.normal = len > 0 ? Vec3(shading / len) : mesh.face_normal(tri);
  return hit;
}

namespace {

/// Entry distance of the ray into the box, empty on a miss.
std::optional<double> slab_entry(const Box3& box, const Vec3& origin, const Vec3& inv_dir, const Vec3& dir, double t_min,
                  double t_max) {
  double lo = t_min;
  double hi = t_max;
  for (int k = 0; k < 3; ++k) {
    if (dir[k] == 0) {
      if (origin[k] < box.min()[k] || origin[k] > box.max()[k]) return std::nullopt;
      continue;
    }
    double t0 = (box.min()[k] - origin[k]) * inv_dir[k];
    double t1 = (box.max()[k] - origin[k]) * inv_dir[k];
    if (t0 > t1) std::swap(t0, t1);
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
    if (lo > hi) return std::nullopt;
  }
  return lo;
}

bool closer(const Hit& candidate, const std::optional<Hit>& best) {
  return !best || candidate.t < best->t || (candidate.t == best->t && candidate.triangle < best->triangle);
}

}  // namespace

std::optional<Hit> intersect(const Ray& ray, const TriMesh& mesh, double t_min, double t_max, FaceCulling cull) {
  if (!(t_min < t_max)) throw ParameterError("intersect requires t_min < t_max");
  const auto& nodes = mesh.bvh().nodes();
  const auto& order = mesh.bvh().order();
  if (nodes.empty()) return std::nullopt;

  const Vec3 inv_dir = ray.direction.cwiseInverse();
  std::optional<Hit> best;
  int stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const auto& node = nodes[static_cast<std::size_t>(stack[--top])];
    const double limit = best ? best->t : t_max;
    // Boxes entered exactly at the current best distance still need a
    // visit so that ties resolve to the lower triangle index.
    const auto entry = slab_entry(node.box, ray.origin, inv_dir, ray.direction, t_min, t_max);
    if (!entry || *entry > limit) continue;
    if (node.leaf()) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        auto hit = intersect_triangle(ray, mesh, order[static_cast<std::size_t>(i)], t_min, t_max, cull);
        if (hit && closer(*hit, best)) best = std::move(hit);
      }
    } else {
      stack[top++] = node.right;
      stack[top++] = node.left;
    }
  }
  return best;
}

// --- Rasterization ----------------------------------------------------------

namespace {

GBuffer empty_gbuffer(int width, int height) {
  if (width < 1 || height < 1) throw ParameterError("raster size must be at least 1x1");
  GBuffer g;
  g.hit_mask = ImagePlane::Zero(height, width);
  g.normal_x = g.normal_y = g.normal_z = ImagePlane::Zero(height, width);
  g.depth = ImagePlane::Zero(height, width);
  g.position_x = g.position_y = g.position_z = ImagePlane::Zero(height, width);
  g.triangle.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), -1);
  return g;
}

}  // namespace

GBuffer rasterize_geometry(const TriMesh& mesh, int width, int height) {
  GBuffer g = empty_gbuffer(width, height);
  const double z_start = mesh.bounds().max().z() + 1.0;
  const Vec3 down(0, 0, -1);
  parallel_for(static_cast<std::size_t>(height), [&](std::size_t row) {
    const auto r = static_cast<Eigen::Index>(row);
    for (Eigen::Index c = 0; c < width; ++c) {
      const Ray ray(Vec3(static_cast<double>(c) + 0.5, static_cast<double>(r) + 0.5, z_start), down);
      const auto hit = intersect(ray, mesh, 0.0, std::numeric_limits<double>::infinity());
      if (!hit) continue;
      g.hit_mask(r, c) = 1.0;
      g.normal_x(r, c) = hit->normal.x();
      g.normal_y(r, c) = hit->normal.y();
      g.normal_z(r, c) = hit->normal.z();
      g.depth(r, c) = hit->position.z();
      g.position_x(r, c) = hit->position.x();
      g.position_y(r, c) = hit->position.y();
      g.position_z(r, c) = hit->position.z();
      g.triangle[static_cast<std::size_t>(r * width + c)] = hit->triangle;
    }
  });
  return g;
}

GBuffer gbuffer_from_normals(const std::vector<Vec3>& normals, int width, int height) {
  GBuffer g = empty_gbuffer(width, height);
  if (normals.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw StructuralError("normal count does not match raster size");
  }
  for (Eigen::Index r = 0; r < height; ++r) {
    for (Eigen::Index c = 0; c < width; ++c) {
      const Vec3& n = normals[static_cast<std::size_t>(r * width + c)];
      if (n.isZero()) continue;
      const Vec3 unit = n.normalized();
      g.hit_mask(r, c) = 1.0;
      g.normal_x(r, c) = unit.x();
      g.normal_y(r, c) = unit.y();
      g.normal_z(r, c) = unit.z();
      g.position_x(r, c) = static_cast<double>(c) + 0.5;
      g.position_y(r, c) = static_cast<double>(r) + 0.5;
    }
  }
  return g;
}

}  // namespace srelight
