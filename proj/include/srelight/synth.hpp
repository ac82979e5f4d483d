#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srelight/image.hpp"
#include "srelight/mesh.hpp"
#include "srelight/shadow.hpp"

namespace srelight {

/// Icosahedron subdivided `levels` times and projected onto a sphere;
/// 20 * 4^levels triangles with radial normals.
TriMesh make_icosphere(int levels, double radius = 1.0, const Vec3& center = Vec3::Zero());

/// Axis-aligned box with flat per-face normals (24 vertices, 12 triangles).
TriMesh make_box(const Vec3& lo, const Vec3& hi);

/// Rectangle in the plane z = `z` facing +z, split into two triangles.
TriMesh make_quad(double x0, double y0, double x1, double y1, double z);

/// Concatenates meshes, preserving triangle order.
TriMesh merge_meshes(const std::vector<TriMesh>& parts);

void write_obj(const std::filesystem::path& path, const TriMesh& mesh);

/// Everything a fixture needs: geometry (unposed mesh plus pose), two
/// lights, a rendered source photo, and ground-truth masks.
struct SynthScene {
  std::string name;
  int width = 0;
  int height = 0;
  std::optional<TriMesh> mesh;  // absent for image-only scenes
  Pose pose;
  LightSpec source_light;
  LightSpec target_light;
  ColorImaged source = ColorImaged::filled(ColorSpace::RGB, 1, 1, 0, 0, 0);
  /// Ground-truth masks under the two lights, computed without the BVH:
  /// convex identity, analytic footprint or an exhaustive triangle loop.
  ShadowMask source_mask;
  ShadowMask target_mask;
  double ambient = 0;
};

/// Scene names accepted by make_scene.
const std::vector<std::string>& scene_names();

/// Deterministic for a given (name, size, seed). ParameterError for an
/// unknown name.
///
/// - sphere: 1280-triangle sphere, frontal source light, side target light.
/// - box_on_plane: floating box over a ground plane, oblique target light.
/// - two_spheres: a small sphere casting onto a large one.
/// - two_step: no mesh; mask with two vertical borders whose luminance
///   steps are h and 2h.
SynthScene make_scene(const std::string& name, int width, int height, std::uint64_t seed);

}  // namespace srelight
