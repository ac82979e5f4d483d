#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "srelight/image.hpp"
#include "srelight/image_io.hpp"

using namespace srelight;

namespace {

ColorImaged rgb1(double r, double g, double b) { return ColorImaged::filled(ColorSpace::RGB, 1, 1, r, g, b); }

std::filesystem::path temp_path(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "srelight_test_image";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Color, GrayMapsToZeroChroma) {
  const auto yuv = rgb_to_yuv(rgb1(0.5, 0.5, 0.5));
  EXPECT_EQ(yuv.space(), ColorSpace::YUV);
  EXPECT_NEAR(yuv[0](0, 0), 0.5, 1e-12);
  EXPECT_NEAR(yuv[1](0, 0), 0.0, 1e-12);
  EXPECT_NEAR(yuv[2](0, 0), 0.0, 1e-12);

  const auto white = rgb_to_yuv(rgb1(1, 1, 1));
  EXPECT_NEAR(white[0](0, 0), 1.0, 1e-12);
  EXPECT_NEAR(white[1](0, 0), 0.0, 1e-12);
}

TEST(Color, PureRed) {
  const auto yuv = rgb_to_yuv(rgb1(1, 0, 0));
  EXPECT_NEAR(yuv[0](0, 0), 0.299, 1e-12);
  EXPECT_NEAR(yuv[1](0, 0), -0.16874, 1e-5);
  EXPECT_NEAR(yuv[2](0, 0), 0.5, 1e-12);

  const auto back = yuv_to_rgb(ColorImaged::filled(ColorSpace::YUV, 1, 1, 0.299, -0.16874, 0.5));
  EXPECT_NEAR(back[0](0, 0), 1.0, 1e-5);
  EXPECT_NEAR(back[1](0, 0), 0.0, 1e-5);
  EXPECT_NEAR(back[2](0, 0), 0.0, 1e-5);
}

TEST(Color, YuvGrayBack) {
  const auto rgb = yuv_to_rgb(ColorImaged::filled(ColorSpace::YUV, 2, 3, 0.5, 0, 0));
  for (int k = 0; k < 3; ++k) EXPECT_TRUE(rgb[k].isApprox(ImagePlane::Constant(2, 3, 0.5)));
}

TEST(Color, RoundTripRandom) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  ImagePlane r(100, 100), g(100, 100), b(100, 100);
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    r(i) = u(rng);
    g(i) = u(rng);
    b(i) = u(rng);
  }
  const ColorImaged img(ColorSpace::RGB, r, g, b);
  const auto back = yuv_to_rgb(rgb_to_yuv(img));
  for (int k = 0; k < 3; ++k) EXPECT_LT((back[k] - img[k]).abs().maxCoeff(), 1e-6);
}

TEST(Color, WrongSpaceRejected) {
  EXPECT_THROW(rgb_to_yuv(ColorImaged::filled(ColorSpace::YUV, 1, 1, 0, 0, 0)), Error);
  EXPECT_THROW(yuv_to_rgb(rgb1(0, 0, 0)), Error);
}

TEST(Color, MismatchedChannels) {
  EXPECT_THROW(ColorImaged(ColorSpace::RGB, ImagePlane::Zero(2, 2), ImagePlane::Zero(2, 3), ImagePlane::Zero(2, 2)),
               StructuralError);
}

TEST(Gamma, KnownValues) {
  ImagePlane p(1, 3);
  p << 0.0, 1.0, 0.5;
  const ImagePlane e = gamma_encode(p);
  EXPECT_EQ(e(0, 0), 0.0);
  EXPECT_EQ(e(0, 1), 1.0);
  EXPECT_NEAR(e(0, 2), 0.72974, 1e-5);

  ImagePlane q(1, 1);
  q << 0.72974;
  EXPECT_NEAR(gamma_decode(q)(0, 0), 0.5, 1e-5);
}

TEST(Gamma, InversePair) {
  ImagePlane p(1, 101);
  for (int i = 0; i <= 100; ++i) p(0, i) = i / 100.0;
  EXPECT_LT((gamma_encode(gamma_decode(p)) - p).abs().maxCoeff(), 1e-7);
  EXPECT_LT((gamma_decode(gamma_encode(p)) - p).abs().maxCoeff(), 1e-7);
}

TEST(Gamma, Monotone) {
  ImagePlane p(1, 200);
  for (int i = 0; i < 200; ++i) p(0, i) = i / 199.0;
  const ImagePlane e = gamma_encode(p);
  for (int i = 1; i < 200; ++i) EXPECT_GT(e(0, i), e(0, i - 1));
}

TEST(Gamma, NegativeNamesPixel) {
  ImagePlane p = ImagePlane::Constant(3, 4, 0.5);
  p(2, 1) = -0.1;
  try {
    gamma_encode(p);
    FAIL();
  } catch (const DomainError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("2"), std::string::npos);
    EXPECT_NE(msg.find("1"), std::string::npos);
  }
  EXPECT_THROW(gamma_decode(p), DomainError);
}

TEST(Gamma, FloatPlane) {
  Plane<float> p = Plane<float>::Constant(2, 2, 0.5f);
  EXPECT_NEAR(gamma_encode(p)(1, 1), 0.72974f, 1e-5f);
}

TEST(Pfm, RoundTripExact) {
  ImagePlane p(5, 7);
  for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = static_cast<float>(0.013 * static_cast<double>(i) - 0.2);
  const auto path = temp_path("a.pfm");
  write_pfm(path, p);
  const ImagePlane q = read_pfm(path);
  ASSERT_EQ(q.rows(), 5);
  ASSERT_EQ(q.cols(), 7);
  EXPECT_EQ((q - p).abs().maxCoeff(), 0.0);
}

TEST(Pfm, RejectsGarbage) {
  const auto path = temp_path("bad.pfm");
  {
    std::ofstream f(path);
    f << "P6\n1 1\n255\nxyz";
  }
  EXPECT_THROW(read_pfm(path), Error);
  EXPECT_THROW(read_pfm(temp_path("missing.pfm")), Error);
}

TEST(Png, RoundTripQuantized) {
  ImagePlane r(4, 6), g(4, 6), b(4, 6);
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    r(i) = static_cast<double>(i % 256) / 255.0;
    g(i) = 1.0 - r(i);
    b(i) = 0.5;
  }
  const ColorImaged img(ColorSpace::RGB, r, g, b);
  const auto path = temp_path("a.png");
  write_png(path, img);
  const auto back = read_png(path);
  ASSERT_EQ(back.width(), 6);
  ASSERT_EQ(back.height(), 4);
  for (int k = 0; k < 3; ++k) EXPECT_LE((back[k] - img[k]).abs().maxCoeff(), 0.5 / 255.0 + 1e-12);
}

TEST(Png, Quantize) {
  EXPECT_EQ(quantize8(-1.0), 0);
  EXPECT_EQ(quantize8(2.0), 255);
  EXPECT_EQ(quantize8(0.5), 128);
}
