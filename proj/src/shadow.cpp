#include "srelight/shadow.hpp"

#include <cmath>
#include <limits>

#include "srelight/parallel.hpp"

namespace srelight {

LightSpec LightSpec::directional(const Vec3& toward_light, double intensity) {
  LightSpec l;
  l.kind = Kind::Directional;
  l.direction = toward_light;
  l.intensity = intensity;
  l.validate();
  return l;
}

LightSpec LightSpec::point(const Vec3& position, double intensity) {
  LightSpec l;
  l.kind = Kind::Point;
  l.position = position;
  l.intensity = intensity;
  l.validate();
  return l;
}

void LightSpec::validate() const {
  if (!(intensity >= 0) || !std::isfinite(intensity)) throw ParameterError("light intensity must be >= 0");
  if (kind == Kind::Directional && !(std::abs(direction.norm() - 1.0) <= 1e-6)) {
    throw ParameterError("directional light direction must be unit length");
  }
  if (kind == Kind::Point && !position.allFinite()) throw ParameterError("point light position is not finite");
}

Vec3 LightSpec::direction_from(const Vec3& surface_point) const {
  if (kind == Kind::Directional) return direction;
  const Vec3 d = position - surface_point;
  const double len = d.norm();
  if (!(len > 0)) throw DegenerateGeometryError("point light coincides with the surface point");
  return d / len;
}

bool self_shadow_test(const Vec3& normal, const LightSpec& light, const Vec3& surface_point) {
  return normal.dot(light.direction_from(surface_point)) < 0;
}

bool cast_shadow_test(const Vec3& surface_point, const LightSpec& light, const TriMesh& mesh,
                      const ShadowOptions& options, int origin_triangle) {
  const Vec3 to_light = light.direction_from(surface_point);
  const double offset = options.feeler_offset * mesh.diagonal();
  double t_max = std::numeric_limits<double>::infinity();
  if (light.kind == LightSpec::Kind::Point) {
    t_max = (light.position - surface_point).norm() - offset;
    if (!(t_max > 0)) return false;
  }
  FaceCulling cull = FaceCulling::None;
  if (origin_triangle >= 0 && mesh.face_normal(origin_triangle).dot(to_light) <= 0) cull = FaceCulling::BackFaces;
  const Ray feeler(surface_point + offset * to_light, to_light);
  return intersect(feeler, mesh, 0.0, t_max, cull).has_value();
}

ShadowMask shadow_mask(const GBuffer& gbuffer, const TriMesh& mesh, const LightSpec& light,
                       const ShadowOptions& options) {
  light.validate();
  const auto h = gbuffer.height();
  const auto w = gbuffer.width();
  for (const ImagePlane* p : {&gbuffer.normal_x, &gbuffer.normal_y, &gbuffer.normal_z, &gbuffer.position_x,
                              &gbuffer.position_y, &gbuffer.position_z}) {
    if (p->rows() != h || p->cols() != w) throw StructuralError("g-buffer planes differ in size");
  }
  if (gbuffer.triangle.size() != static_cast<std::size_t>(w * h)) throw StructuralError("g-buffer triangle ids missing");
  for (int id : gbuffer.triangle) {
    if (id >= static_cast<int>(mesh.triangle_count())) {
      throw StructuralError("g-buffer references triangle " + std::to_string(id) + " not in the mesh");
    }
  }

  ShadowMask out{ImagePlane::Zero(h, w), gbuffer.hit_mask};
  parallel_for(static_cast<std::size_t>(h), [&](std::size_t row) {
    const auto r = static_cast<Eigen::Index>(row);
    for (Eigen::Index c = 0; c < w; ++c) {
      if (!gbuffer.covered(r, c)) continue;
      const Vec3 p = gbuffer.position(r, c);
      if (self_shadow_test(gbuffer.normal(r, c), light, p)) continue;
      if (cast_shadow_test(p, light, mesh, options, gbuffer.triangle_at(r, c))) continue;
      out.mask(r, c) = 1.0;
    }
  });
  return out;
}

}  // namespace srelight
