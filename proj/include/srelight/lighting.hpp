#pragma once

#include <Eigen/Core>

#include <numbers>
#include <optional>

#include "srelight/image.hpp"
#include "srelight/mesh.hpp"
#include "srelight/shadow.hpp"

namespace srelight {

/// Nine real SH coefficients ordered (l,m) = (0,0), (1,-1), (1,0), (1,1),
/// (2,-2), (2,-1), (2,0), (2,1), (2,2).
using ShCoeffs = Eigen::Matrix<double, 9, 1>;

/// Clamped-cosine convolution gains per band: pi, 2pi/3, pi/4.
inline constexpr double kBandGain[3] = {std::numbers::pi, 2.0 * std::numbers::pi / 3.0, std::numbers::pi / 4.0};
inline constexpr int kCoeffBand[9] = {0, 1, 1, 1, 2, 2, 2, 2, 2};

inline constexpr double kY00 = 0.282095;
inline constexpr double kY1 = 0.488603;
inline constexpr double kY2 = 1.092548;
inline constexpr double kY20 = 0.315392;
inline constexpr double kY22 = 0.546274;

/// How an ambient intensity enters coeffs[0].
enum class AmbientConvention {
  /// coeffs[0] += a (the default).
  Direct,
  /// coeffs[0] += a / (pi * Y00), so SH shading of the DC band gains exactly a.
  Irradiance,
};

struct ShLighting {
  ShCoeffs coeffs = ShCoeffs::Zero();
  /// Ambient intensity already folded into coeffs[0]; 0 until injected.
  double ambient = 0.0;
  AmbientConvention convention = AmbientConvention::Direct;

  /// Amount `ambient` contributed to coeffs[0].
  double ambient_coefficient() const;
  /// coeffs with the ambient contribution removed from coeffs[0].
  ShCoeffs directional() const;
};

/// Real SH basis at a unit direction. DomainError if | |d| - 1 | > 1e-4.
ShCoeffs sh_basis(const Vec3& direction);

/// intensity * sh_basis(direction toward the light). Point lights use the
/// direction from `reference_point` (normally the mesh centroid).
ShLighting project_light(const LightSpec& light, const Vec3& reference_point = Vec3::Zero());

/// Mean luminance over covered shadow pixels. NoShadowPixelsError if none.
double estimate_ambient(const ImagePlane& luminance, const ShadowMask& mask);

/// Adds ambient `a` to coeffs[0] and records it. ContractError when the
/// lighting already carries ambient; ParameterError for a < 0.
ShLighting inject_ambient(const ShLighting& lighting, double a,
                          AmbientConvention convention = AmbientConvention::Direct);

/// Unclamped Lambertian irradiance of SH coefficients at a unit normal.
double sh_irradiance(const ShCoeffs& coeffs, const Vec3& normal);

/// Lambertian shading of every covered pixel: max(0, directional irradiance)
/// plus the recorded ambient. With a mask, shadowed pixels get the ambient
/// term only. Background pixels are 0.
ImagePlane shade(const GBuffer& gbuffer, const ShLighting& lighting, const ShadowMask* mask = nullptr);

/// Squared L2 distance between coefficient vectors.
double lighting_error(const ShLighting& predicted, const ShLighting& truth);

}  // namespace srelight
