#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "srelight/image.hpp"

namespace srelight {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Box3 = Eigen::AlignedBox3d;

/// Similarity transform v -> scale * rotation * v + translation.
struct Pose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();
  double scale = 1.0;

  static Pose identity() { return {}; }

  /// Builds a pose from a row-major homogeneous 4x4 matrix whose upper 3x3
  /// block is a positive multiple of a rotation.
  static Pose from_matrix(const Eigen::Matrix4d& m);

  /// Throws ParameterError unless rotation is orthonormal (1e-5) with
  /// positive determinant and scale > 0.
  void validate() const;

  Vec3 apply(const Vec3& v) const { return scale * (rotation * v) + translation; }
};

/// `outer` applied after `inner`.
Pose compose(const Pose& outer, const Pose& inner);

struct Ray {
  Vec3 origin;
  Vec3 direction;

  /// Throws DomainError unless |direction| == 1 within 1e-6.
  Ray(const Vec3& origin, const Vec3& direction);
};

struct Hit {
  double t = 0;
  int triangle = -1;
  /// Weights of the triangle's three vertices; they sum to 1.
  Vec3 barycentric = Vec3::Zero();
  /// Unit normal interpolated from the vertex normals.
  Vec3 normal = Vec3::Zero();
  Vec3 position = Vec3::Zero();
};

/// Which hits a query ignores. A back face is a triangle whose oriented
/// face normal points along the ray direction.
enum class FaceCulling { None, BackFaces };

/// Median-split bounding-volume hierarchy over triangle indices. Leaves hold
/// at most kLeafSize triangles; every triangle appears in exactly one leaf.
class Bvh {
 public:
  static constexpr int kLeafSize = 4;

  struct Node {
    Box3 box;
    int left = -1;  // child indices, -1 for leaves
    int right = -1;
    int first = 0;  // range into order() for leaves
    int count = 0;
    bool leaf() const { return left < 0; }
  };

  Bvh() = default;
  Bvh(const std::vector<Vec3>& positions, const std::vector<std::array<int, 3>>& triangles);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<int>& order() const { return order_; }

 private:
  int build(std::vector<int>& items, int begin, int end, const std::vector<Box3>& boxes,
            const std::vector<Vec3>& centroids);

  std::vector<Node> nodes_;
  std::vector<int> order_;
};

/// Triangle mesh with per-vertex unit normals and a ray-acceleration index.
/// Immutable once built. Positions use image-aligned units after posing:
/// x = column, y = row, +z toward the camera.
class TriMesh {
 public:
  /// Validates indices, normalizes the vertex normals and builds the BVH.
  /// Throws EmptyMeshError for zero triangles, StructuralError otherwise.
  TriMesh(std::vector<Vec3> positions, std::vector<Vec3> normals, std::vector<std::array<int, 3>> triangles);

  const std::vector<Vec3>& positions() const { return positions_; }
  const std::vector<Vec3>& normals() const { return normals_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const Bvh& bvh() const { return bvh_; }

  std::size_t triangle_count() const { return triangles_.size(); }

  /// Geometric normal of a triangle, oriented to agree with its vertex
  /// normals. Zero for degenerate triangles.
  const Vec3& face_normal(int tri) const { return face_normals_[static_cast<std::size_t>(tri)]; }

  const Box3& bounds() const { return bounds_; }
  double diagonal() const { return bounds_.diagonal().norm(); }
  /// Mean of the vertex positions.
  Vec3 centroid() const;

 private:
  std::vector<Vec3> positions_;
  std::vector<Vec3> normals_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<Vec3> face_normals_;
  Box3 bounds_;
  Bvh bvh_;
};

/// Wavefront OBJ reader. Accepts v/vn/f records (faces as v, v/vt, v//vn or
/// v/vt/vn, negative indices allowed) and fan-triangulates polygons. Normals
/// are taken from the file only when every face references them; otherwise
/// area-weighted vertex normals are synthesized.
TriMesh parse_obj(std::istream& in);
TriMesh load_obj(const std::filesystem::path& path);

/// Area-weighted vertex normals from triangle winding.
std::vector<Vec3> area_weighted_normals(const std::vector<Vec3>& positions,
                                        const std::vector<std::array<int, 3>>& triangles);

TriMesh apply_pose(const TriMesh& mesh, const Pose& pose);

/// Watertight ray/triangle test against a single triangle. Hits strictly
/// inside (t_min, t_max) are reported; both sides of the triangle count
/// unless `cull` says otherwise.
std::optional<Hit> intersect_triangle(const Ray& ray, const TriMesh& mesh, int tri, double t_min, double t_max,
                                      FaceCulling cull = FaceCulling::None);

/// Nearest hit through the BVH. Equal distances resolve to the lower
/// triangle index.
std::optional<Hit> intersect(const Ray& ray, const TriMesh& mesh, double t_min, double t_max,
                             FaceCulling cull = FaceCulling::None);

/// Per-pixel geometry from orthographic rays cast along -z through pixel
/// centers (col + 0.5, row + 0.5).
struct GBuffer {
  ImagePlane hit_mask;
  ImagePlane normal_x, normal_y, normal_z;
  ImagePlane depth;
  ImagePlane position_x, position_y, position_z;
  std::vector<int> triangle;  // row-major, -1 where nothing was hit

  Eigen::Index width() const { return hit_mask.cols(); }
  Eigen::Index height() const { return hit_mask.rows(); }
  bool covered(Eigen::Index r, Eigen::Index c) const { return hit_mask(r, c) != 0.0; }
  Vec3 normal(Eigen::Index r, Eigen::Index c) const { return {normal_x(r, c), normal_y(r, c), normal_z(r, c)}; }
  Vec3 position(Eigen::Index r, Eigen::Index c) const {
    return {position_x(r, c), position_y(r, c), position_z(r, c)};
  }
  int triangle_at(Eigen::Index r, Eigen::Index c) const { return triangle[static_cast<std::size_t>(r * width() + c)]; }
};

GBuffer rasterize_geometry(const TriMesh& mesh, int width, int height);

/// Builds a G-buffer from explicit per-pixel normals (row-major, covered
/// wherever the normal is non-zero). Used for analytic test scenes.
GBuffer gbuffer_from_normals(const std::vector<Vec3>& normals, int width, int height);

}  // namespace srelight
