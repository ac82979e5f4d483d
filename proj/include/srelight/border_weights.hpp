#pragma once

#include <vector>

#include "srelight/image.hpp"
#include "srelight/shadow.hpp"

namespace srelight {

/// Where local contrast is measured.
enum class ContrastSource {
  /// Gamma-corrected luminance of the analyzed image (default).
  Luminance,
  /// The binary shadow mask itself.
  Mask,
};

/// How pixels off the face enter the mask smoothing.
enum class Background {
  /// Averaged out: the smoothed value is the lit fraction of the covered
  /// pixels in the window (default).
  Excluded,
  /// Counted as shadow (mask value 0).
  Shadow,
};

struct BorderParams {
  int window = 21;         // odd, >= 3; box filter and derivative support
  double tau1 = 0.02;      // border band is tau1 < c < tau2
  double tau2 = 0.98;
  double sigma_max = 0.25; // in smoothed-mask units
  int r_max = 10;          // largest neighborhood radius (Chebyshev, pixels)
  double w_cap = 10.0;     // normalization ceiling
  ContrastSource contrast_source = ContrastSource::Luminance;
  Background background = Background::Excluded;

  /// ParameterError on any violated range.
  void validate() const;
  int half_window() const { return window / 2; }
};

struct BorderPixel {
  int row = 0;
  int col = 0;
  double contrast = 0;
};

/// Border pixels in row-major order.
struct BorderSet {
  std::vector<BorderPixel> pixels;
  double t_max = 0;

  bool empty() const { return pixels.empty(); }
};

/// Box-filtered mask, values in [0,1], replicate padding.
ImagePlane smooth_mask(const ImagePlane& mask, const BorderParams& params);
/// With Background::Excluded, the box filter averages over covered pixels
/// only, so the face silhouette does not read as a shadow edge; 0 where the
/// window holds no covered pixel. With Background::Shadow, the plain filter
/// of the mask. Both agree under full coverage.
ImagePlane smooth_mask(const ShadowMask& mask, const BorderParams& params);

/// Pixels with tau1 < c < tau2 on the face. Contrast is left at zero.
BorderSet find_border(const ImagePlane& smoothed, const ImagePlane& coverage, const BorderParams& params);

/// Fills t(u,v) for every border pixel: the sum over the horizontal,
/// vertical and both diagonal directions of |mean(forward half-window) -
/// mean(backward half-window)|, half-windows of window/2 samples excluding
/// the center. Updates t_max.
BorderSet local_contrast(const ImagePlane& luminance, BorderSet border, const BorderParams& params);

/// Gaussian contribution tally over each border pixel's neighborhood,
/// zeroed off the face and max-scaled to w_cap. All-zero when the border is
/// empty or has no contrast.
ImagePlane accumulate_weights(const ImagePlane& smoothed, const BorderSet& border, const ImagePlane& coverage,
                              const BorderParams& params);

/// smooth_mask -> find_border -> local_contrast -> accumulate_weights.
/// `luminance` must already be gamma-corrected.
ImagePlane border_weights(const ShadowMask& mask, const ImagePlane& luminance, const BorderParams& params = {});

}  // namespace srelight
