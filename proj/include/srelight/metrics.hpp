#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srelight/image.hpp"
#include "srelight/lighting.hpp"
#include "srelight/relight.hpp"

namespace srelight {

/// Mean |log10 pred - log10 truth|. DomainError on a non-positive sample.
double l_ratio(const RatioImage& pred, const RatioImage& truth);

/// Weighted L1 of log10 ratio differences over the count of non-zero
/// weights. 0 for an all-zero weight map.
double l_border(const RatioImage& pred, const RatioImage& truth, const ImagePlane& weights);

/// l_ratio + l_border(source weights) + l_border(target weights).
double l_wratio(const RatioImage& pred, const RatioImage& truth, const ImagePlane& source_weights,
                const ImagePlane& target_weights);

/// Mean over pixels of |dx_p - dx_t| + |dy_p - dy_t| with forward
/// differences; the last column/row repeats the edge (difference 0).
double l_gradient(const RatioImage& pred, const RatioImage& truth);

double mse(const ImagePlane& a, const ImagePlane& b);
/// Mean over all channels and pixels.
double mse(const ColorImaged& a, const ColorImaged& b);

struct SiMse {
  double error = 0;
  double scale = 1;
};

/// MSE after scaling `a` by the least-squares optimal single scalar
/// s = sum(a*b) / sum(a*a). An all-zero `a` is a DomainError.
SiMse si_mse(const ImagePlane& a, const ImagePlane& b);
SiMse si_mse(const ColorImaged& a, const ColorImaged& b);

struct SsimParams {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 1.0;
};

/// Mean local SSIM over every position where the Gaussian window fits.
/// Images smaller than the window use a window truncated to the image.
double ssim(const ImagePlane& a, const ImagePlane& b, const SsimParams& params = {});
double dssim(const ImagePlane& a, const ImagePlane& b, const SsimParams& params = {});
/// Mean of the per-channel DSSIM.
double dssim(const ColorImaged& a, const ColorImaged& b, const SsimParams& params = {});

enum class EvalMode { Luminance, Rgb };

/// Optional inputs for the training-loss metrics.
struct EvalExtras {
  std::optional<RatioImage> pred_ratio;
  std::optional<RatioImage> true_ratio;
  std::optional<ImagePlane> source_weights;
  std::optional<ImagePlane> target_weights;
  std::optional<ShLighting> pred_lighting;
  std::optional<ShLighting> true_lighting;
};

/// Named metric values. Only metrics whose inputs were provided appear.
struct MetricReport {
  std::map<std::string, double> values;
  long pixel_count = 0;
  std::optional<long> source_weighted_count;
  std::optional<long> target_weighted_count;
};

MetricReport evaluate(const ColorImaged& relit, const ColorImaged& target, const EvalExtras& extras = {},
                      EvalMode mode = EvalMode::Luminance);

struct BatchReport {
  std::vector<std::pair<std::string, MetricReport>> per_image;  // sorted by name
  std::map<std::string, double> mean;
  std::map<std::string, double> stddev;  // population standard deviation
};

/// Sorts by name and aggregates each metric over the images that report it.
BatchReport aggregate(std::vector<std::pair<std::string, MetricReport>> reports);

long count_nonzero(const ImagePlane& weights);

}  // namespace srelight
