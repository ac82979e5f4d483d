#include "srelight/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace srelight {
namespace {

ImagePlane log10_checked(const RatioImage& ratio, const char* what) {
  for (Eigen::Index r = 0; r < ratio.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < ratio.values.cols(); ++c) {
      const double v = ratio.values(r, c);
      if (!(v > 0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + ": non-positive ratio " + std::to_string(v) + " at (row " +
                          std::to_string(r) + ", col " + std::to_string(c) + ")");
      }
    }
  }
  return ratio.values.log10();
}

ImagePlane log_difference(const RatioImage& pred, const RatioImage& truth, const char* what) {
  require_same_shape(pred.values, truth.values, what);
  return (log10_checked(pred, what) - log10_checked(truth, what)).abs();
}

/// Normalized 1D Gaussian taps, truncated to `size`.
std::vector<double> gaussian_taps(int size, double sigma) {
  std::vector<double> taps(static_cast<std::size_t>(size));
  const double center = (size - 1) / 2.0;
  double sum = 0;
  for (int i = 0; i < size; ++i) {
    const double x = i - center;
    taps[static_cast<std::size_t>(i)] = std::exp(-x * x / (2 * sigma * sigma));
    sum += taps[static_cast<std::size_t>(i)];
  }
  for (auto& t : taps) t /= sum;
  return taps;
}

/// Valid-region separable filtering.
ImagePlane filter_valid(const ImagePlane& in, const std::vector<double>& row_taps,
                        const std::vector<double>& col_taps) {
  const auto kw = static_cast<Eigen::Index>(row_taps.size());
  const auto kh = static_cast<Eigen::Index>(col_taps.size());
  const auto out_w = in.cols() - kw + 1;
  const auto out_h = in.rows() - kh + 1;
  ImagePlane horizontal = ImagePlane::Zero(in.rows(), out_w);
  for (Eigen::Index r = 0; r < in.rows(); ++r) {
    for (Eigen::Index c = 0; c < out_w; ++c) {
      double s = 0;
      for (Eigen::Index k = 0; k < kw; ++k) s += row_taps[static_cast<std::size_t>(k)] * in(r, c + k);
      horizontal(r, c) = s;
    }
  }
  ImagePlane out = ImagePlane::Zero(out_h, out_w);
  for (Eigen::Index r = 0; r < out_h; ++r) {
    for (Eigen::Index c = 0; c < out_w; ++c) {
      double s = 0;
      for (Eigen::Index k = 0; k < kh; ++k) s += col_taps[static_cast<std::size_t>(k)] * horizontal(r + k, c);
      out(r, c) = s;
    }
  }
  return out;
}

}  // namespace

long count_nonzero(const ImagePlane& weights) { return static_cast<long>((weights != 0).count()); }

double l_ratio(const RatioImage& pred, const RatioImage& truth) {
  return log_difference(pred, truth, "l_ratio").mean();
}

double l_border(const RatioImage& pred, const RatioImage& truth, const ImagePlane& weights) {
  const ImagePlane diff = log_difference(pred, truth, "l_border");
  require_same_shape(diff, weights, "l_border");
  const long n = count_nonzero(weights);
  if (n == 0) return 0.0;
  return (weights.abs() * diff).sum() / static_cast<double>(n);
}

double l_wratio(const RatioImage& pred, const RatioImage& truth, const ImagePlane& source_weights,
                const ImagePlane& target_weights) {
  return l_ratio(pred, truth) + l_border(pred, truth, source_weights) + l_border(pred, truth, target_weights);
}

double l_gradient(const RatioImage& pred, const RatioImage& truth) {
  require_same_shape(pred.values, truth.values, "l_gradient");
  const ImagePlane& p = pred.values;
  const ImagePlane& t = truth.values;
  const auto h = p.rows();
  const auto w = p.cols();
  double sum = 0;
  for (Eigen::Index r = 0; r < h; ++r) {
    for (Eigen::Index c = 0; c < w; ++c) {
      const Eigen::Index cn = std::min(c + 1, w - 1);
      const Eigen::Index rn = std::min(r + 1, h - 1);
      const double dx = (p(r, cn) - p(r, c)) - (t(r, cn) - t(r, c));
      const double dy = (p(rn, c) - p(r, c)) - (t(rn, c) - t(r, c));
      sum += std::abs(dx) + std::abs(dy);
    }
  }
  return sum / static_cast<double>(p.size());
}

double mse(const ImagePlane& a, const ImagePlane& b) {
  require_same_shape(a, b, "mse");
  return (a - b).square().mean();
}

double mse(const ColorImaged& a, const ColorImaged& b) {
  double sum = 0;
  for (int k = 0; k < 3; ++k) {
    require_same_shape(a[k], b[k], "mse");
    sum += (a[k] - b[k]).square().sum();
  }
  return sum / (3.0 * static_cast<double>(a[0].size()));
}

SiMse si_mse(const ImagePlane& a, const ImagePlane& b) {
  require_same_shape(a, b, "si_mse");
  const double aa = a.square().sum();
  if (!(aa > 0)) throw DomainError("si_mse: prediction is identically zero");
  const double scale = (a * b).sum() / aa;
  return {mse(ImagePlane(scale * a), b), scale};
}

SiMse si_mse(const ColorImaged& a, const ColorImaged& b) {
  double ab = 0;
  double aa = 0;
  for (int k = 0; k < 3; ++k) {
    require_same_shape(a[k], b[k], "si_mse");
    ab += (a[k] * b[k]).sum();
    aa += a[k].square().sum();
  }
  if (!(aa > 0)) throw DomainError("si_mse: prediction is identically zero");
  const double scale = ab / aa;
  double sum = 0;
  for (int k = 0; k < 3; ++k) sum += (scale * a[k] - b[k]).square().sum();
  return {sum / (3.0 * static_cast<double>(a[0].size())), scale};
}

double ssim(const ImagePlane& a, const ImagePlane& b, const SsimParams& params) {
  require_same_shape(a, b, "ssim");
  const int kw = std::min<int>(params.window, static_cast<int>(a.cols()));
  const int kh = std::min<int>(params.window, static_cast<int>(a.rows()));
  const auto row_taps = gaussian_taps(kw, params.sigma);
  const auto col_taps = gaussian_taps(kh, params.sigma);
  const double c1 = std::pow(params.k1 * params.dynamic_range, 2);
  const double c2 = std::pow(params.k2 * params.dynamic_range, 2);

  const ImagePlane mu_a = filter_valid(a, row_taps, col_taps);
  const ImagePlane mu_b = filter_valid(b, row_taps, col_taps);
  const ImagePlane aa = filter_valid(a * a, row_taps, col_taps);
  const ImagePlane bb = filter_valid(b * b, row_taps, col_taps);
  const ImagePlane ab = filter_valid(a * b, row_taps, col_taps);

  const ImagePlane var_a = aa - mu_a.square();
  const ImagePlane var_b = bb - mu_b.square();
  const ImagePlane cov = ab - mu_a * mu_b;
  const ImagePlane map = ((2 * mu_a * mu_b + c1) * (2 * cov + c2)) /
                         ((mu_a.square() + mu_b.square() + c1) * (var_a + var_b + c2));
  return map.mean();
}

double dssim(const ImagePlane& a, const ImagePlane& b, const SsimParams& params) {
  return (1.0 - ssim(a, b, params)) / 2.0;
}

double dssim(const ColorImaged& a, const ColorImaged& b, const SsimParams& params) {
  double sum = 0;
  for (int k = 0; k < 3; ++k) sum += dssim(a[k], b[k], params);
  return sum / 3.0;
}

MetricReport evaluate(const ColorImaged& relit, const ColorImaged& target, const EvalExtras& extras, EvalMode mode) {
  if (relit.width() != target.width() || relit.height() != target.height()) {
    throw StructuralError("evaluate: relit and target differ in size");
  }
  MetricReport report;
  report.pixel_count = static_cast<long>(relit.width() * relit.height());
  auto& v = report.values;
  if (mode == EvalMode::Luminance) {
    const ImagePlane ya = luminance(relit);
    const ImagePlane yb = luminance(target);
    v["mse"] = mse(ya, yb);
    v["si_mse"] = si_mse(ya, yb).error;
    v["dssim"] = dssim(ya, yb);
  } else {
    v["mse"] = mse(relit, target);
    v["si_mse"] = si_mse(relit, target).error;
    v["dssim"] = dssim(relit, target);
  }

  const bool ratios = extras.pred_ratio && extras.true_ratio;
  if (ratios) {
    v["l_ratio"] = l_ratio(*extras.pred_ratio, *extras.true_ratio);
    v["l_gradient"] = l_gradient(*extras.pred_ratio, *extras.true_ratio);
    v["l_dssim"] = dssim(extras.pred_ratio->values, extras.true_ratio->values);
  }
  if (extras.source_weights) {
    report.source_weighted_count = count_nonzero(*extras.source_weights);
    if (ratios) v["l_sborder"] = l_border(*extras.pred_ratio, *extras.true_ratio, *extras.source_weights);
  }
  if (extras.target_weights) {
    report.target_weighted_count = count_nonzero(*extras.target_weights);
    if (ratios) v["l_tborder"] = l_border(*extras.pred_ratio, *extras.true_ratio, *extras.target_weights);
  }
  if (ratios && extras.source_weights && extras.target_weights) {
    v["l_wratio"] = v["l_ratio"] + v["l_sborder"] + v["l_tborder"];
  }
  if (extras.pred_lighting && extras.true_lighting) {
    v["l_lighting"] = lighting_error(*extras.pred_lighting, *extras.true_lighting);
  }
  return report;
}

BatchReport aggregate(std::vector<std::pair<std::string, MetricReport>> reports) {
  std::sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  BatchReport batch;
  std::map<std::string, std::vector<double>> columns;
  for (const auto& [name, report] : reports) {
    for (const auto& [metric, value] : report.values) columns[metric].push_back(value);
  }
  for (const auto& [metric, values] : columns) {
    double mean = 0;
    for (double x : values) mean += x;
    mean /= static_cast<double>(values.size());
    double var = 0;
    for (double x : values) var += (x - mean) * (x - mean);
    var /= static_cast<double>(values.size());
    batch.mean[metric] = mean;
    batch.stddev[metric] = std::sqrt(var);
  }
  batch.per_image = std::move(reports);
  return batch;
}

}  // namespace srelight
