#pragma once

#include <optional>

#include "srelight/border_weights.hpp"
#include "srelight/image.hpp"
#include "srelight/lighting.hpp"
#include "srelight/mesh.hpp"
#include "srelight/shadow.hpp"

namespace srelight {

inline constexpr double kRatioEpsilon = 1e-3;

/// Per-pixel target/source luminance ratio in gamma-corrected space.
/// Every sample is >= epsilon.
struct RatioImage {
  ImagePlane values;
  double epsilon = kRatioEpsilon;

  /// StructuralError/DomainError when a sample is non-finite or < epsilon.
  void validate() const;
  RatioImage reciprocal() const;
};

/// R = max(T^g, eps) / max(S^g, eps) with g = gamma.
RatioImage ratio_from_shadings(const ImagePlane& source_shading, const ImagePlane& target_shading,
                               double epsilon = kRatioEpsilon, double gamma = kDefaultGamma);

/// Scales the source's gamma-corrected Y by the ratio, decodes it and
/// recombines with the source U and V. Output is clamped to [0,1].
ColorImaged apply_ratio(const ColorImaged& source, const RatioImage& ratio, double gamma = kDefaultGamma);

/// A light as both its geometric description (for shadows) and its SH
/// projection (for shading). When `sh` is absent the light is projected
/// from the mesh centroid.
struct LightInput {
  LightSpec spec;
  std::optional<ShLighting> sh;
};

struct RelightOptions {
  /// Used for both lights when set, instead of estimating from the photo.
  std::optional<double> ambient;
  /// Fallback when the source photo has no shadow pixels.
  std::optional<double> ambient_default;
  /// Target ambient; defaults to the source estimate.
  std::optional<double> target_ambient;
  AmbientConvention convention = AmbientConvention::Direct;
  double epsilon = kRatioEpsilon;
  double gamma = kDefaultGamma;
  ShadowOptions shadow;
  BorderParams border;
};

struct RelightResult {
  ColorImaged relit;
  RatioImage ratio;
  ShadowMask source_mask;
  ShadowMask target_mask;
  ImagePlane source_weights;
  ImagePlane target_weights;
  ShLighting source_lighting;
  ShLighting target_lighting;
  ImagePlane source_shading;
  ImagePlane target_shading;
};

/// Classical ratio-image relighting of a photo aligned with a posed mesh:
/// shadow masks for both lights, source ambient from the photo, SH shading
/// under both lights, ratio, application. Also emits border weights for
/// the source (from the photo) and target (from the relit image).
RelightResult relight(const ColorImaged& source, const GBuffer& gbuffer, const TriMesh& mesh,
                      const LightInput& source_light, const LightInput& target_light,
                      const RelightOptions& options = {});

}  // namespace srelight
