#include "srelight/lighting.hpp"

#include <cmath>

#include "srelight/parallel.hpp"

namespace srelight {

double ShLighting::ambient_coefficient() const {
  if (convention == AmbientConvention::Irradiance) return ambient / (kBandGain[0] * kY00);
  return ambient;
}

ShCoeffs ShLighting::directional() const {
  ShCoeffs c = coeffs;
  c[0] -= ambient_coefficient();
  return c;
}

ShCoeffs sh_basis(const Vec3& d) {
  if (!(std::abs(d.norm() - 1.0) <= 1e-4)) throw DomainError("sh_basis needs a unit direction");
  const double x = d.x();
  const double y = d.y();
  const double z = d.z();
  ShCoeffs b;
  b << kY00, kY1 * y, kY1 * z, kY1 * x, kY2 * x * y, kY2 * y * z, kY20 * (3 * z * z - 1), kY2 * x * z,
      kY22 * (x * x - y * y);
  return b;
}

ShLighting project_light(const LightSpec& light, const Vec3& reference_point) {
  light.validate();
  ShLighting out;
  out.coeffs = light.intensity * sh_basis(light.direction_from(reference_point));
  return out;
}

double estimate_ambient(const ImagePlane& luminance, const ShadowMask& mask) {
  require_same_shape(luminance, mask.mask, "estimate_ambient");
  require_same_shape(mask.coverage, mask.mask, "estimate_ambient");
  double sum = 0;
  long count = 0;
  for (Eigen::Index r = 0; r < luminance.rows(); ++r) {
    for (Eigen::Index c = 0; c < luminance.cols(); ++c) {
      if (!mask.shadowed(r, c)) continue;
      sum += luminance(r, c);
      ++count;
    }
  }
  if (count == 0) throw NoShadowPixelsError("no covered shadow pixels to estimate ambient light from");
  return sum / static_cast<double>(count);
}

ShLighting inject_ambient(const ShLighting& lighting, double a, AmbientConvention convention) {
  if (lighting.ambient != 0) throw ContractError("lighting already carries an ambient term");
  if (!(a >= 0) || !std::isfinite(a)) throw ParameterError("ambient intensity must be >= 0");
  ShLighting out = lighting;
  out.ambient = a;
  out.convention = convention;
  out.coeffs[0] += out.ambient_coefficient();
  return out;
}

double sh_irradiance(const ShCoeffs& coeffs, const Vec3& normal) {
  const ShCoeffs basis = sh_basis(normal);
  double e = 0;
  for (int i = 0; i < 9; ++i) e += kBandGain[kCoeffBand[i]] * coeffs[i] * basis[i];
  return e;
}

ImagePlane shade(const GBuffer& gbuffer, const ShLighting& lighting, const ShadowMask* mask) {
  const auto h = gbuffer.height();
  const auto w = gbuffer.width();
  if (mask) {
    require_same_shape(mask->mask, gbuffer.hit_mask, "shade");
  }
  const ShCoeffs directional = lighting.directional();
  ImagePlane out = ImagePlane::Zero(h, w);
  parallel_for(static_cast<std::size_t>(h), [&](std::size_t row) {
    const auto r = static_cast<Eigen::Index>(row);
    for (Eigen::Index c = 0; c < w; ++c) {
      if (!gbuffer.covered(r, c)) continue;
      if (mask && mask->shadowed(r, c)) {
        out(r, c) = lighting.ambient;
        continue;
      }
      out(r, c) = std::max(0.0, sh_irradiance(directional, gbuffer.normal(r, c))) + lighting.ambient;
    }
  });
  return out;
}

double lighting_error(const ShLighting& predicted, const ShLighting& truth) {
  return (predicted.coeffs - truth.coeffs).squaredNorm();
}

}  // namespace srelight
