#include "srelight/border_weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "srelight/parallel.hpp"

namespace srelight {

void BorderParams::validate() const {
  if (window < 3 || window % 2 == 0) throw ParameterError("window must be odd and >= 3");
  if (!(tau1 > 0 && tau1 < tau2 && tau2 < 1)) throw ParameterError("thresholds must satisfy 0 < tau1 < tau2 < 1");
  if (!(sigma_max > 0)) throw ParameterError("sigma_max must be positive");
  if (r_max < 1) throw ParameterError("r_max must be at least 1");
  if (!(w_cap > 0)) throw ParameterError("w_cap must be positive");
}

namespace {

Eigen::Index clamp_index(Eigen::Index i, Eigen::Index n) { return std::clamp<Eigen::Index>(i, 0, n - 1); }

}  // namespace

ImagePlane smooth_mask(const ImagePlane& mask, const BorderParams& params) {
  params.validate();
  const auto h = mask.rows();
  const auto w = mask.cols();
  if (params.window > w || params.window > h) {
    throw ParameterError("smoothing window " + std::to_string(params.window) + " exceeds the " + std::to_string(w) +
                         "x" + std::to_string(h) + " image");
  }
  const int half = params.half_window();
  // Separable running sums; sums of 0/1 samples stay exact in double.
  ImagePlane horizontal(h, w);
  parallel_for(static_cast<std::size_t>(h), [&](std::size_t row) {
    const auto r = static_cast<Eigen::Index>(row);
    double sum = 0;
    for (Eigen::Index k = -half; k <= half; ++k) sum += mask(r, clamp_index(k, w));
    horizontal(r, 0) = sum;
    for (Eigen::Index c = 1; c < w; ++c) {
      sum += mask(r, clamp_index(c + half, w)) - mask(r, clamp_index(c - half - 1, w));
      horizontal(r, c) = sum;
    }
  });
  ImagePlane out(h, w);
  const double norm = 1.0 / (static_cast<double>(params.window) * static_cast<double>(params.window));
  parallel_for(static_cast<std::size_t>(w), [&](std::size_t col) {
    const auto c = static_cast<Eigen::Index>(col);
    double sum = 0;
    for (Eigen::Index k = -half; k <= half; ++k) sum += horizontal(clamp_index(k, h), c);
    out(0, c) = sum * norm;
    for (Eigen::Index r = 1; r < h; ++r) {
      sum += horizontal(clamp_index(r + half, h), c) - horizontal(clamp_index(r - half - 1, h), c);
      out(r, c) = sum * norm;
    }
  });
  return out.cwiseMax(0.0).cwiseMin(1.0);
}

ImagePlane smooth_mask(const ShadowMask& mask, const BorderParams& params) {
  require_same_shape(mask.mask, mask.coverage, "smooth_mask");
  const ImagePlane lit = smooth_mask(mask.mask, params);
  if (params.background == Background::Shadow || (mask.coverage != 0).all()) return lit;
  const ImagePlane face = smooth_mask(ImagePlane((mask.coverage != 0).cast<double>()), params);
  return (face > 0).select((lit / face).min(1.0), 0.0);
}

BorderSet find_border(const ImagePlane& smoothed, const ImagePlane& coverage, const BorderParams& params) {
  params.validate();
  require_same_shape(smoothed, coverage, "find_border");
  BorderSet out;
  for (Eigen::Index r = 0; r < smoothed.rows(); ++r) {
    for (Eigen::Index c = 0; c < smoothed.cols(); ++c) {
      const double v = smoothed(r, c);
      if (coverage(r, c) != 0 && v > params.tau1 && v < params.tau2) {
        out.pixels.push_back({static_cast<int>(r), static_cast<int>(c), 0.0});
      }
    }
  }
  return out;
}

BorderSet local_contrast(const ImagePlane& luminance, BorderSet border, const BorderParams& params) {
  params.validate();
  static constexpr int kDirections[4][2] = {{0, 1}, {1, 0}, {1, 1}, {1, -1}};  // (drow, dcol)
  const int half = params.half_window();
  const auto h = luminance.rows();
  const auto w = luminance.cols();
  auto sample = [&](Eigen::Index r, Eigen::Index c) { return luminance(clamp_index(r, h), clamp_index(c, w)); };

  parallel_for(border.pixels.size(), [&](std::size_t i) {
    auto& px = border.pixels[i];
    if (px.row >= h || px.col >= w) throw StructuralError("border pixel outside the luminance image");
    double t = 0;
    for (const auto& d : kDirections) {
      double forward = 0;
      double backward = 0;
      for (int k = 1; k <= half; ++k) {
        forward += sample(px.row + k * d[0], px.col + k * d[1]);
        backward += sample(px.row - k * d[0], px.col - k * d[1]);
      }
      t += std::abs(forward - backward) / half;
    }
    px.contrast = t;
  });
  border.t_max = 0;
  for (const auto& px : border.pixels) border.t_max = std::max(border.t_max, px.contrast);
  return border;
}

ImagePlane accumulate_weights(const ImagePlane& smoothed, const BorderSet& border, const ImagePlane& coverage,
                              const BorderParams& params) {
  params.validate();
  require_same_shape(smoothed, coverage, "accumulate_weights");
  const auto h = smoothed.rows();
  const auto w = smoothed.cols();
  ImagePlane weights = ImagePlane::Zero(h, w);
  if (border.empty() || !(border.t_max > 0)) return weights;

  double mu = 0;
  for (const auto& px : border.pixels) mu += smoothed(px.row, px.col);
  mu /= static_cast<double>(border.pixels.size());

  struct Source {
    int row, col, radius;
    double inv_two_var;
  };
  std::vector<Source> sources;
  sources.reserve(border.pixels.size());
  for (const auto& px : border.pixels) {
    const double q = px.contrast / border.t_max;
    const double sigma = q * params.sigma_max;
    if (!(sigma > 0)) continue;  // zero contrast contributes nothing
    const int radius = std::max(1, static_cast<int>(std::lround(q * params.r_max)));
    sources.push_back({px.row, px.col, radius, 1.0 / (2.0 * sigma * sigma)});
  }
  const double peak = 1.0 / (params.sigma_max * std::sqrt(2.0 * std::numbers::pi));

  // Each output row sums contributions in border (row-major) order, so the
  // result does not depend on how rows are spread over workers.
  parallel_for(static_cast<std::size_t>(h), [&](std::size_t row) {
    const auto y = static_cast<int>(row);
    for (const auto& s : sources) {
      if (std::abs(s.row - y) > s.radius) continue;
      const int x0 = std::max(0, s.col - s.radius);
      const int x1 = std::min(static_cast<int>(w) - 1, s.col + s.radius);
      for (int x = x0; x <= x1; ++x) {
        const double d = smoothed(y, x) - mu;
        weights(y, x) += peak * std::exp(-d * d * s.inv_two_var);
      }
    }
  });

  weights = (coverage != 0).select(weights, 0.0);
  const double max = weights.maxCoeff();
  if (max > 0) weights *= params.w_cap / max;
  return weights;
}

ImagePlane border_weights(const ShadowMask& mask, const ImagePlane& luminance, const BorderParams& params) {
  require_same_shape(mask.mask, luminance, "border_weights");
  const ImagePlane smoothed = smooth_mask(mask, params);
  BorderSet border = find_border(smoothed, mask.coverage, params);
  const ImagePlane& contrast_source = params.contrast_source == ContrastSource::Mask ? mask.mask : luminance;
  border = local_contrast(contrast_source, std::move(border), params);
  return accumulate_weights(smoothed, border, mask.coverage, params);
}

}  // namespace srelight
