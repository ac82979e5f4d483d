#pragma once

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <string>

#include "srelight/errors.hpp"

namespace srelight {

/// Single-channel raster, row-major, indexed (row, col).
template <typename Scalar>
using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using ImagePlane = Plane<double>;

enum class ColorSpace { RGB, YUV };

/// Full-range BT.601 luma weights.
inline constexpr double kLumaR = 0.299;
inline constexpr double kLumaG = 0.587;
inline constexpr double kLumaB = 0.114;

inline constexpr double kDefaultGamma = 1.0 / 2.2;

/// Three equally sized planes tagged with the color space they hold.
template <typename Scalar>
class ColorImage {
 public:
  using PlaneType = Plane<Scalar>;

  ColorImage(ColorSpace space, PlaneType c0, PlaneType c1, PlaneType c2)
      : space_(space), channels_{std::move(c0), std::move(c1), std::move(c2)} {
    const auto& first = channels_[0];
    if (first.rows() < 1 || first.cols() < 1) throw StructuralError("color image must be at least 1x1");
    for (const auto& c : channels_) {
      if (c.rows() != first.rows() || c.cols() != first.cols()) {
        throw StructuralError("color channels differ in size");
      }
    }
  }

  /// Constant-filled image.
  static ColorImage filled(ColorSpace space, Eigen::Index height, Eigen::Index width, Scalar c0, Scalar c1,
                           Scalar c2) {
    return ColorImage(space, PlaneType::Constant(height, width, c0), PlaneType::Constant(height, width, c1),
                      PlaneType::Constant(height, width, c2));
  }

  ColorSpace space() const { return space_; }
  Eigen::Index width() const { return channels_[0].cols(); }
  Eigen::Index height() const { return channels_[0].rows(); }

  const PlaneType& channel(int i) const { return channels_.at(static_cast<std::size_t>(i)); }
  const PlaneType& operator[](int i) const { return channel(i); }

 private:
  ColorSpace space_;
  std::array<PlaneType, 3> channels_;
};

using ColorImaged = ColorImage<double>;

template <typename A, typename B>
void require_same_shape(const Eigen::ArrayBase<A>& a, const Eigen::ArrayBase<B>& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw StructuralError(std::string(what) + ": dimension mismatch (" + std::to_string(a.cols()) + "x" +
                          std::to_string(a.rows()) + " vs " + std::to_string(b.cols()) + "x" +
                          std::to_string(b.rows()) + ")");
  }
}

template <typename Scalar>
ColorImage<Scalar> rgb_to_yuv(const ColorImage<Scalar>& img) {
  if (img.space() != ColorSpace::RGB) throw StructuralError("rgb_to_yuv expects an RGB image");
  const auto& r = img[0];
  const auto& g = img[1];
  const auto& b = img[2];
  Plane<Scalar> y = Scalar(kLumaR) * r + Scalar(kLumaG) * g + Scalar(kLumaB) * b;
  Plane<Scalar> u = Scalar(0.5 / (1.0 - kLumaB)) * (b - y);
  Plane<Scalar> v = Scalar(0.5 / (1.0 - kLumaR)) * (r - y);
  return ColorImage<Scalar>(ColorSpace::YUV, std::move(y), std::move(u), std::move(v));
}

/// Inverse of rgb_to_yuv; the result is clamped to [0,1].
template <typename Scalar>
ColorImage<Scalar> yuv_to_rgb(const ColorImage<Scalar>& img) {
  if (img.space() != ColorSpace::YUV) throw StructuralError("yuv_to_rgb expects a YUV image");
  const auto& y = img[0];
  const auto& u = img[1];
  const auto& v = img[2];
  const Scalar kr(2.0 * (1.0 - kLumaR));
  const Scalar kb(2.0 * (1.0 - kLumaB));
  Plane<Scalar> r = y + kr * v;
  Plane<Scalar> b = y + kb * u;
  Plane<Scalar> g = (y - Scalar(kLumaR) * r - Scalar(kLumaB) * b) / Scalar(kLumaG);
  return ColorImage<Scalar>(ColorSpace::RGB, r.cwiseMax(Scalar(0)).cwiseMin(Scalar(1)),
                            g.cwiseMax(Scalar(0)).cwiseMin(Scalar(1)), b.cwiseMax(Scalar(0)).cwiseMin(Scalar(1)));
}

/// Y channel of an RGB image.
template <typename Scalar>
Plane<Scalar> luminance(const ColorImage<Scalar>& img) {
  if (img.space() == ColorSpace::YUV) return img[0];
  return Scalar(kLumaR) * img[0] + Scalar(kLumaG) * img[1] + Scalar(kLumaB) * img[2];
}

namespace detail {

template <typename Derived>
void require_non_negative(const Eigen::ArrayBase<Derived>& plane, const char* op) {
  for (Eigen::Index r = 0; r < plane.rows(); ++r) {
    for (Eigen::Index c = 0; c < plane.cols(); ++c) {
      const auto v = plane(r, c);
      if (!(v >= 0)) {
        throw DomainError(std::string(op) + ": negative or NaN sample " + std::to_string(double(v)) + " at (row " +
                          std::to_string(r) + ", col " + std::to_string(c) + ")");
      }
    }
  }
}

}  // namespace detail

/// v -> v^gamma per sample. Negative samples are a DomainError naming the pixel.
template <typename Derived>
Plane<typename Derived::Scalar> gamma_encode(const Eigen::ArrayBase<Derived>& plane,
                                             double gamma = kDefaultGamma) {
  using Scalar = typename Derived::Scalar;
  detail::require_non_negative(plane, "gamma_encode");
  return plane.pow(Scalar(gamma));
}

/// v -> v^(1/gamma); inverse of gamma_encode.
template <typename Derived>
Plane<typename Derived::Scalar> gamma_decode(const Eigen::ArrayBase<Derived>& plane,
                                             double gamma = kDefaultGamma) {
  using Scalar = typename Derived::Scalar;
  detail::require_non_negative(plane, "gamma_decode");
  return plane.pow(Scalar(1.0 / gamma));
}

}  // namespace srelight
