#pragma once

#include "srelight/image.hpp"
#include "srelight/mesh.hpp"

namespace srelight {

/// A single light. For directional lights `direction` points from the
/// surface toward the light.
struct LightSpec {
  enum class Kind { Directional, Point };

  Kind kind = Kind::Directional;
  Vec3 direction = Vec3::UnitZ();
  Vec3 position = Vec3::Zero();
  double intensity = 1.0;

  static LightSpec directional(const Vec3& toward_light, double intensity = 1.0);
  static LightSpec point(const Vec3& position, double intensity = 1.0);

  /// ParameterError unless the direction is unit (1e-6) and intensity >= 0.
  void validate() const;

  /// Unit vector from `surface_point` toward the light. Throws
  /// DegenerateGeometryError when a point light sits on the surface point.
  Vec3 direction_from(const Vec3& surface_point) const;

  bool operator==(const LightSpec&) const = default;
};

/// Binary mask: 1 lit, 0 shadowed. `coverage` is 1 where the face covers
/// the pixel; background pixels are 0 in both planes.
struct ShadowMask {
  ImagePlane mask;
  ImagePlane coverage;

  Eigen::Index width() const { return mask.cols(); }
  Eigen::Index height() const { return mask.rows(); }
  bool shadowed(Eigen::Index r, Eigen::Index c) const { return coverage(r, c) != 0 && mask(r, c) == 0; }
};

struct ShadowOptions {
  /// Shadow-feeler origins move this fraction of the mesh bounding-box
  /// diagonal toward the light.
  double feeler_offset = 1e-3;
};

/// True when the surface faces away from the light (n . l < 0). Grazing
/// incidence counts as lit.
bool self_shadow_test(const Vec3& normal, const LightSpec& light, const Vec3& surface_point);

/// True when a feeler ray from the surface point toward the light hits the
/// mesh. For point lights only hits closer than the light count.
///
/// `origin_triangle` is the triangle the point lies on, when known. If that
/// triangle's face normal points away from the light or is perpendicular
/// to it, while the caller considers the point lit, the point is in the
/// faceted terminator band and its feeler starts beneath or along the
/// surface; the exit through the mesh's own back faces is then ignored.
bool cast_shadow_test(const Vec3& surface_point, const LightSpec& light, const TriMesh& mesh,
                      const ShadowOptions& options = {}, int origin_triangle = -1);

/// Per covered pixel: 0 if self- or cast-shadowed, else 1.
ShadowMask shadow_mask(const GBuffer& gbuffer, const TriMesh& mesh, const LightSpec& light,
                       const ShadowOptions& options = {});

}  // namespace srelight
