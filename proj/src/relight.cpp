#include "srelight/relight.hpp"

#include <cmath>

namespace srelight {

void RatioImage::validate() const {
  if (!(epsilon > 0)) throw DomainError("ratio epsilon must be positive");
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      const double v = values(r, c);
      if (!std::isfinite(v) || v <= 0) {
        throw DomainError("ratio sample " + std::to_string(v) + " at (row " + std::to_string(r) + ", col " +
                          std::to_string(c) + ") is not a positive finite value");
      }
    }
  }
}

RatioImage RatioImage::reciprocal() const {
  RatioImage out{values.inverse(), epsilon};
  return out;
}

RatioImage ratio_from_shadings(const ImagePlane& source_shading, const ImagePlane& target_shading, double epsilon,
                               double gamma) {
  require_same_shape(source_shading, target_shading, "ratio_from_shadings");
  if (!(epsilon > 0)) throw ParameterError("ratio epsilon must be positive");
  const ImagePlane source = gamma_encode(source_shading, gamma).cwiseMax(epsilon);
  const ImagePlane target = gamma_encode(target_shading, gamma).cwiseMax(epsilon);
  return RatioImage{target / source, epsilon};
}

ColorImaged apply_ratio(const ColorImaged& source, const RatioImage& ratio, double gamma) {
  const ColorImaged yuv = rgb_to_yuv(source);
  require_same_shape(yuv[0], ratio.values, "apply_ratio");
  // Y can dip a hair below zero only through rounding.
  const ImagePlane y = yuv[0].cwiseMax(0.0);
  ImagePlane relit_y = gamma_decode(gamma_encode(y, gamma) * ratio.values, gamma);
  return yuv_to_rgb(ColorImaged(ColorSpace::YUV, std::move(relit_y), yuv[1], yuv[2]));
}

namespace {

ShLighting sh_for(const LightInput& light, const TriMesh& mesh) {
  if (light.sh) {
    ShLighting sh = *light.sh;
    if (sh.ambient != 0) throw ContractError("input lighting must not carry ambient; it is estimated from the photo");
    return sh;
  }
  return project_light(light.spec, mesh.centroid());
}

}  // namespace

RelightResult relight(const ColorImaged& source, const GBuffer& gbuffer, const TriMesh& mesh,
                      const LightInput& source_light, const LightInput& target_light, const RelightOptions& options) {
  if (source.width() != gbuffer.width() || source.height() != gbuffer.height()) {
    throw StructuralError("source image and g-buffer are not on the same pixel grid");
  }
  const ImagePlane y = luminance(source).cwiseMax(0.0);

  ShadowMask source_mask = shadow_mask(gbuffer, mesh, source_light.spec, options.shadow);
  ShadowMask target_mask = shadow_mask(gbuffer, mesh, target_light.spec, options.shadow);

  double source_ambient = 0;
  if (options.ambient) {
    source_ambient = *options.ambient;
  } else {
    try {
      source_ambient = estimate_ambient(y, source_mask);
    } catch (const NoShadowPixelsError&) {
      if (!options.ambient_default) throw;
      source_ambient = *options.ambient_default;
    }
  }
  const double target_ambient = options.target_ambient.value_or(options.ambient.value_or(source_ambient));

  ShLighting source_sh = inject_ambient(sh_for(source_light, mesh), source_ambient, options.convention);
  ShLighting target_sh = inject_ambient(sh_for(target_light, mesh), target_ambient, options.convention);

  ImagePlane source_shading = shade(gbuffer, source_sh, &source_mask);
  ImagePlane target_shading = shade(gbuffer, target_sh, &target_mask);
  RatioImage ratio = ratio_from_shadings(source_shading, target_shading, options.epsilon, options.gamma);
  ColorImaged relit = apply_ratio(source, ratio, options.gamma);

  ImagePlane source_weights = border_weights(source_mask, gamma_encode(y, options.gamma), options.border);
  ImagePlane target_weights =
      border_weights(target_mask, gamma_encode(luminance(relit).cwiseMax(0.0), options.gamma), options.border);

  return RelightResult{std::move(relit),          std::move(ratio),          std::move(source_mask),
                       std::move(target_mask),    std::move(source_weights), std::move(target_weights),
                       std::move(source_sh),      std::move(target_sh),      std::move(source_shading),
                       std::move(target_shading)};
}

}  // namespace srelight
