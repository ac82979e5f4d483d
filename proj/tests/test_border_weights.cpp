#include <gtest/gtest.h>

#include <random>

#include "srelight/border_weights.hpp"
#include "srelight/lighting.hpp"
#include "srelight/parallel.hpp"
#include "srelight/synth.hpp"

using namespace srelight;

namespace {

// Left half 0, right half 1; the first lit column is `edge`.
ImagePlane half_plane(int h, int w, int edge) {
  ImagePlane m = ImagePlane::Zero(h, w);
  m.rightCols(w - edge).setOnes();
  return m;
}

int chebyshev_to_border(int r, int c, const BorderSet& b) {
  int best = 1 << 30;
  for (const auto& px : b.pixels) best = std::min(best, std::max(std::abs(px.row - r), std::abs(px.col - c)));
  return best;
}

}  // namespace

TEST(SmoothMask, Constants) {
  const BorderParams p;
  EXPECT_TRUE((smooth_mask(ImagePlane::Ones(30, 30), p) == 1.0).all());
  EXPECT_TRUE((smooth_mask(ImagePlane::Zero(30, 30), p) == 0.0).all());
}

TEST(SmoothMask, HalfPlaneRamp) {
  const BorderParams p;
  const int edge = 40;
  const auto s = smooth_mask(half_plane(30, 80, edge), p);
  for (int c = 0; c < 80; ++c) {
    const double expect = std::clamp((c + 10 - edge + 1) / 21.0, 0.0, 1.0);
    EXPECT_NEAR(s(15, c), expect, 1e-12) << c;
  }
}

TEST(SmoothMask, WindowTooLarge) { EXPECT_THROW(smooth_mask(ImagePlane::Ones(10, 40), BorderParams{}), ParameterError); }

TEST(FindBorder, UniformIsEmpty) {
  const BorderParams p;
  const auto b = find_border(smooth_mask(ImagePlane::Ones(30, 30), p), ImagePlane::Ones(30, 30), p);
  EXPECT_TRUE(b.empty());
  EXPECT_EQ(b.t_max, 0);
}

TEST(FindBorder, BandWidth) {
  BorderParams p;
  const auto s = smooth_mask(half_plane(30, 80, 40), p);
  const auto b = find_border(s, ImagePlane::Ones(30, 80), p);
  EXPECT_EQ(b.pixels.size(), 30u * 20u);
  for (const auto& px : b.pixels) {
    EXPECT_GE(px.col, 30);
    EXPECT_LE(px.col, 49);
  }
  // row-major order
  for (std::size_t i = 1; i < b.pixels.size(); ++i) {
    const auto& a = b.pixels[i - 1];
    const auto& c = b.pixels[i];
    EXPECT_TRUE(a.row < c.row || (a.row == c.row && a.col < c.col));
  }
}

TEST(FindBorder, NarrowThresholds) {
  // The ramp takes values k/21, so no column lies strictly inside
  // (0.49, 0.51); widening to (0.47, 0.53) keeps the two central columns.
  BorderParams p;
  const auto s = smooth_mask(half_plane(30, 80, 40), p);
  p.tau1 = 0.49;
  p.tau2 = 0.51;
  EXPECT_TRUE(find_border(s, ImagePlane::Ones(30, 80), p).empty());
  p.tau1 = 0.47;
  p.tau2 = 0.53;
  const auto b = find_border(s, ImagePlane::Ones(30, 80), p);
  EXPECT_EQ(b.pixels.size(), 60u);
  for (const auto& px : b.pixels) EXPECT_TRUE(px.col == 39 || px.col == 40);
}

TEST(FindBorder, RespectsCoverage) {
  BorderParams p;
  const auto s = smooth_mask(half_plane(30, 80, 40), p);
  ImagePlane cov = ImagePlane::Ones(30, 80);
  cov.topRows(10).setZero();
  EXPECT_EQ(find_border(s, cov, p).pixels.size(), 20u * 20u);
}

TEST(LocalContrast, ConstantLuminance) {
  BorderParams p;
  const auto s = smooth_mask(half_plane(30, 80, 40), p);
  const auto b = local_contrast(ImagePlane::Constant(30, 80, 0.4), find_border(s, ImagePlane::Ones(30, 80), p), p);
  for (const auto& px : b.pixels) EXPECT_EQ(px.contrast, 0);
  EXPECT_EQ(b.t_max, 0);
}

TEST(LocalContrast, StepEdge) {
  BorderParams p;
  const double h = 0.3;
  const ImagePlane y = 0.1 + h * half_plane(40, 80, 40);
  BorderSet b;
  b.pixels.push_back({20, 39, 0});
  b.pixels.push_back({20, 40, 0});
  b = local_contrast(y, b, p);
  // horizontal h, vertical 0, both diagonals h
  for (const auto& px : b.pixels) EXPECT_NEAR(px.contrast, 3 * h, 1e-12);
  EXPECT_NEAR(b.t_max, 3 * h, 1e-12);
}

TEST(Accumulate, EmptyBorder) {
  BorderParams p;
  const auto w = accumulate_weights(ImagePlane::Ones(30, 30), BorderSet{}, ImagePlane::Ones(30, 30), p);
  EXPECT_TRUE((w == 0).all());
}

TEST(Accumulate, FlatContrastIsZero) {
  BorderParams p;
  const auto s = smooth_mask(half_plane(30, 80, 40), p);
  auto b = find_border(s, ImagePlane::Ones(30, 80), p);
  EXPECT_TRUE((accumulate_weights(s, b, ImagePlane::Ones(30, 80), p) == 0).all());
}

TEST(Accumulate, SingleSourceIsItsOwnMax) {
  BorderParams p;
  const auto s = smooth_mask(half_plane(40, 80, 40), p);
  BorderSet b;
  b.pixels.push_back({20, 40, 1.0});
  b.t_max = 1.0;
  const auto w = accumulate_weights(s, b, ImagePlane::Ones(40, 80), p);
  EXPECT_NEAR(w(20, 40), 10.0, 1e-12);
  EXPECT_NEAR(w.maxCoeff(), 10.0, 1e-12);
  for (int r = 0; r < 40; ++r) {
    for (int c = 0; c < 80; ++c) {
      if (std::max(std::abs(r - 20), std::abs(c - 40)) > p.r_max) EXPECT_EQ(w(r, c), 0);
    }
  }
}

TEST(BorderWeights, FullyLitIsZero) {
  ShadowMask m{ImagePlane::Ones(40, 40), ImagePlane::Ones(40, 40)};
  EXPECT_TRUE((border_weights(m, ImagePlane::Constant(40, 40, 0.5)) == 0).all());
}

TEST(BorderWeights, TwoStepHarderEdgeWins) {
  const auto s = make_scene("two_step", 160, 64, 0);
  const ImagePlane y = gamma_encode(luminance(s.source));
  const auto w = border_weights(s.source_mask, y);
  const int left = static_cast<int>(0.3 * 160);
  const int right = static_cast<int>(0.7 * 160);
  const auto row = w.row(32);
  const double left_peak = row.segment(0, 80).maxCoeff();
  const double right_peak = row.segment(80, 80).maxCoeff();
  EXPECT_NEAR(right_peak, 10.0, 1e-9);
  EXPECT_GT(right_peak, left_peak);
  auto band = [&](int from, int to, double level) {
    int n = 0;
    for (int c = from; c < to; ++c) n += row(c) > level ? 1 : 0;
    return n;
  };
  EXPECT_GT(band(80, 160, right_peak / 2), band(0, 80, left_peak / 2));
  EXPECT_GT(row(right), 0);
  EXPECT_GT(row(left), 0);
}

TEST(BorderWeights, RangeAndLocality) {
  const auto s = make_scene("sphere", 96, 96, 0);
  const auto mesh = apply_pose(*s.mesh, s.pose);
  const auto g = rasterize_geometry(mesh, 96, 96);
  const auto mask = shadow_mask(g, mesh, s.target_light);
  BorderParams p;
  const ImagePlane y = gamma_encode(shade(g, inject_ambient(project_light(s.target_light), 0.1), &mask));
  const auto w = border_weights(mask, y, p);
  EXPECT_GE(w.minCoeff(), 0);
  EXPECT_NEAR(w.maxCoeff(), 10.0, 1e-9);
  const auto border = find_border(smooth_mask(mask, p), mask.coverage, p);
  ASSERT_FALSE(border.empty());
  for (int r = 0; r < 96; ++r) {
    for (int c = 0; c < 96; ++c) {
      if (w(r, c) != 0) EXPECT_LE(chebyshev_to_border(r, c, border), p.r_max);
      if (mask.coverage(r, c) == 0) EXPECT_EQ(w(r, c), 0);
    }
  }
}

TEST(BorderWeights, ScaleInvariant) {
  const auto s = make_scene("two_step", 160, 64, 0);
  const ImagePlane y = gamma_encode(luminance(s.source));
  const auto base = border_weights(s.source_mask, y);
  for (double k : {0.5, 2.0}) {
    EXPECT_LT((border_weights(s.source_mask, ImagePlane(k * y)) - base).abs().maxCoeff(), 1e-5);
  }
}

TEST(BorderWeights, ThreadCountDoesNotMatter) {
  const auto s = make_scene("two_step", 160, 64, 0);
  const ImagePlane y = gamma_encode(luminance(s.source));
  set_thread_count(1);
  const auto a = border_weights(s.source_mask, y);
  set_thread_count(3);
  const auto b = border_weights(s.source_mask, y);
  set_thread_count(0);
  EXPECT_TRUE((a == b).all());
}

TEST(BorderWeights, MaskContrastSource) {
  const auto s = make_scene("two_step", 160, 64, 0);
  BorderParams p;
  p.contrast_source = ContrastSource::Mask;
  const auto w = border_weights(s.source_mask, ImagePlane::Zero(64, 160), p);
  // Both edges are identical unit steps in the mask, so they tie.
  EXPECT_NEAR(w.row(32).segment(0, 80).maxCoeff(), w.row(32).segment(80, 80).maxCoeff(), 1e-9);
}

TEST(BorderParams, Validation) {
  BorderParams p;
  p.tau1 = 0.6;
  p.tau2 = 0.4;
  EXPECT_THROW(p.validate(), ParameterError);
  p = {};
  p.window = 20;
  EXPECT_THROW(p.validate(), ParameterError);
  p = {};
  p.r_max = 0;
  EXPECT_THROW(p.validate(), ParameterError);
}

TEST(SmoothMask, SilhouetteIsNotABorder) {
  const auto mesh = make_icosphere(3, 30, Vec3(40, 40, 0));
  const auto g = rasterize_geometry(mesh, 80, 80);
  const auto lit = shadow_mask(g, mesh, LightSpec::directional(Vec3::UnitZ()));
  const BorderParams p;
  const auto s = smooth_mask(lit, p);
  EXPECT_TRUE(find_border(s, lit.coverage, p).empty());
  EXPECT_TRUE((border_weights(lit, ImagePlane::Constant(80, 80, 0.5), p) == 0).all());
  EXPECT_TRUE(((s == 1) || (lit.coverage == 0)).all());

  BorderParams as_shadow;
  as_shadow.background = Background::Shadow;
  EXPECT_FALSE(find_border(smooth_mask(lit, as_shadow), lit.coverage, as_shadow).empty());
}
