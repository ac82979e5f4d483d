#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "srelight/mesh.hpp"
#include "srelight/synth.hpp"

using namespace srelight;

namespace {

TriMesh obj(const std::string& text) {
  std::istringstream in(text);
  return parse_obj(in);
}

const char* kTetra =
    "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\n"
    "f 1 3 2\nf 1 2 4\nf 1 4 3\nf 2 3 4\n";

const char* kCube =
    "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nv 0 0 1\nv 1 0 1\nv 1 1 1\nv 0 1 1\n"
    "f 1 4 3 2\nf 5 6 7 8\nf 1 2 6 5\nf 3 4 8 7\nf 2 3 7 6\nf 1 5 8 4\n";

TriMesh random_soup(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Vec3> pos;
  std::vector<std::array<int, 3>> tris;
  for (int i = 0; i < count; ++i) {
    const Vec3 c(u(rng), u(rng), u(rng));
    for (int k = 0; k < 3; ++k) pos.push_back(c + 0.3 * Vec3(u(rng), u(rng), u(rng)));
    tris.push_back({3 * i, 3 * i + 1, 3 * i + 2});
  }
  auto normals = area_weighted_normals(pos, tris);
  return TriMesh(pos, normals, tris);
}

}  // namespace

TEST(Obj, Tetrahedron) {
  const auto m = obj(kTetra);
  EXPECT_EQ(m.positions().size(), 4u);
  EXPECT_EQ(m.triangle_count(), 4u);
}

TEST(Obj, QuadFanSplit) {
  const auto m = obj("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n");
  ASSERT_EQ(m.triangle_count(), 2u);
  EXPECT_EQ(m.triangles()[0], (std::array<int, 3>{0, 1, 2}));
  EXPECT_EQ(m.triangles()[1], (std::array<int, 3>{0, 2, 3}));
}

TEST(Obj, CubeNormalsOutward) {
  const auto m = obj(kCube);
  EXPECT_EQ(m.triangle_count(), 12u);
  const Vec3 center(0.5, 0.5, 0.5);
  for (std::size_t i = 0; i < m.positions().size(); ++i) {
    EXPECT_NEAR(m.normals()[i].norm(), 1.0, 1e-12);
    EXPECT_GT(m.normals()[i].dot(m.positions()[i] - center), 0);
  }
  for (int t = 0; t < 12; ++t) {
    const auto& tri = m.triangles()[static_cast<std::size_t>(t)];
    const Vec3 mid = (m.positions()[tri[0]] + m.positions()[tri[1]] + m.positions()[tri[2]]) / 3;
    EXPECT_GT(m.face_normal(t).dot(mid - center), 0);
  }
}

TEST(Obj, IndexForms) {
  const auto m = obj(
      "# comment\nv 0 0 0\nv 1 0 0\nv 0 1 0\nvt 0 0\nvn 0 0 1\no thing\n"
      "f 1/1/1 2/1/1 3/1/1\nf -3//1 -2//1 -1//1\n");
  EXPECT_EQ(m.triangle_count(), 2u);
  EXPECT_TRUE(m.normals()[0].isApprox(Vec3::UnitZ()));
}

TEST(Obj, ErrorsCarryLineNumbers) {
  try {
    obj("v 0 0 0\nv 1 0\nf 1 2 3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  try {
    obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 9\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
  }
  EXPECT_THROW(obj("v 0 0 0\nbogus 1\n"), ParseError);
  EXPECT_THROW(obj("v 0 0 0\nv 1 0 0\nv 0 1 0\n"), EmptyMeshError);
  EXPECT_THROW(load_obj("/nonexistent/mesh.obj"), IoError);
}

TEST(Pose, IdentityLeavesVertices) {
  const auto m = obj(kTetra);
  const auto p = apply_pose(m, Pose::identity());
  for (std::size_t i = 0; i < m.positions().size(); ++i) EXPECT_EQ(p.positions()[i], m.positions()[i]);
}

TEST(Pose, ScaleDoublesDistances) {
  const auto m = obj(kTetra);
  Pose pose;
  pose.scale = 2;
  const auto p = apply_pose(m, pose);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_TRUE(p.normals()[i].isApprox(m.normals()[i]));
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_NEAR((p.positions()[i] - p.positions()[j]).norm(), 2 * (m.positions()[i] - m.positions()[j]).norm(),
                  1e-12);
    }
  }
}

TEST(Pose, RotationAndComposition) {
  Pose rz;
  rz.rotation = Eigen::AngleAxisd(std::numbers::pi / 2, Vec3::UnitZ()).toRotationMatrix();
  EXPECT_TRUE(rz.apply(Vec3::UnitX()).isApprox(Vec3::UnitY(), 1e-6));

  Pose shift;
  shift.translation = Vec3(1, 2, 3);
  shift.scale = 3;
  const Pose both = compose(shift, rz);
  const Vec3 v(0.3, -0.7, 1.1);
  EXPECT_TRUE(both.apply(v).isApprox(shift.apply(rz.apply(v)), 1e-12));

  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = 3 * rz.rotation;
  m.topRightCorner<3, 1>() = Vec3(1, 2, 3);
  const Pose fm = Pose::from_matrix(m);
  EXPECT_NEAR(fm.scale, 3, 1e-12);
  EXPECT_TRUE(fm.apply(v).isApprox(Vec3(3 * (rz.rotation * v) + Vec3(1, 2, 3)), 1e-12));
}

TEST(Pose, Validation) {
  Pose p;
  p.scale = 0;
  EXPECT_THROW(p.validate(), ParameterError);
  p.scale = 1;
  p.rotation(0, 0) = 2;
  EXPECT_THROW(p.validate(), ParameterError);
  p.rotation = Mat3::Identity();
  p.rotation(2, 2) = -1;
  EXPECT_THROW(p.validate(), ParameterError);
}

TEST(Intersect, CentroidBarycentric) {
  const auto m = obj("v 0 0 0\nv 3 0 0\nv 0 3 0\nf 1 2 3\n");
  const Ray ray(Vec3(1, 1, 5), Vec3(0, 0, -1));
  const auto hit = intersect(ray, m, 0, 100);
  ASSERT_TRUE(hit);
  EXPECT_NEAR(hit->t, 5, 1e-12);
  EXPECT_TRUE(hit->barycentric.isApprox(Vec3::Constant(1.0 / 3), 1e-5));
  EXPECT_TRUE(hit->position.isApprox(Vec3(1, 1, 0)));
}

TEST(Intersect, ParallelMisses) {
  const auto m = obj("v 0 0 0\nv 3 0 0\nv 0 3 0\nf 1 2 3\n");
  EXPECT_FALSE(intersect(Ray(Vec3(-1, 1, 0), Vec3(1, 0, 0)), m, 0, 100));
  EXPECT_FALSE(intersect(Ray(Vec3(-1, 1, 1), Vec3(1, 0, 0)), m, 0, 100));
}

TEST(Intersect, BackFaceCulling) {
  const auto m = obj("v 0 0 0\nv 3 0 0\nv 0 3 0\nf 1 2 3\n");
  const Ray from_below(Vec3(1, 1, -5), Vec3(0, 0, 1));
  EXPECT_TRUE(intersect(from_below, m, 0, 100));
  EXPECT_FALSE(intersect(from_below, m, 0, 100, FaceCulling::BackFaces));
  EXPECT_TRUE(intersect(Ray(Vec3(1, 1, 5), Vec3(0, 0, -1)), m, 0, 100, FaceCulling::BackFaces));
}

TEST(Intersect, NonUnitRayRejected) { EXPECT_THROW(Ray(Vec3::Zero(), Vec3(0, 0, 2)), DomainError); }

TEST(Intersect, MatchesBruteForce) {
  const auto mesh = random_soup(200, 11);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  int hits = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 o(u(rng), u(rng), u(rng));
    const Vec3 d = Vec3(u(rng), u(rng), u(rng)).normalized();
    const auto fast = intersect(Ray(o, d), mesh, 0, std::numeric_limits<double>::infinity());
    const auto slow = oracle::nearest_hit(mesh, o, d);
    ASSERT_EQ(fast.has_value(), slow.has_value()) << "ray " << i;
    if (!fast) continue;
    ++hits;
    EXPECT_EQ(fast->triangle, slow->triangle) << "ray " << i;
    EXPECT_NEAR(fast->t, slow->t, 1e-9);
  }
  EXPECT_GT(hits, 100);
}

TEST(Intersect, BvhAgreesWithPerTriangleLoop) {
  const auto mesh = random_soup(500, 21);
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 10000; ++i) {
    const Ray ray(Vec3(u(rng), u(rng), u(rng)), Vec3(u(rng), u(rng), u(rng)).normalized());
    const auto fast = intersect(ray, mesh, 0, 1e9);
    std::optional<Hit> slow;
    for (int t = 0; t < 500; ++t) {
      const auto h = intersect_triangle(ray, mesh, t, 0, slow ? slow->t : 1e9);
      if (h && (!slow || h->t < slow->t)) slow = h;
    }
    ASSERT_EQ(fast.has_value(), slow.has_value());
    if (fast) {
      EXPECT_EQ(fast->triangle, slow->triangle);
      EXPECT_EQ(fast->t, slow->t);
    }
  }
}

TEST(Rasterize, EmptyFrustum) {
  const auto m = make_quad(100, 100, 110, 110, 0);
  const auto g = rasterize_geometry(m, 32, 32);
  EXPECT_EQ(g.hit_mask.sum(), 0);
}

TEST(Rasterize, SquareBlock) {
  const auto m = make_quad(10, 10, 20, 20, 5);
  const auto g = rasterize_geometry(m, 32, 32);
  EXPECT_EQ(g.hit_mask.sum(), 100);
  for (int r = 0; r < 32; ++r) {
    for (int c = 0; c < 32; ++c) {
      const bool inside = r >= 10 && r < 20 && c >= 10 && c < 20;
      ASSERT_EQ(g.covered(r, c), inside) << r << "," << c;
      if (!inside) continue;
      EXPECT_EQ(g.depth(r, c), 5);
      EXPECT_TRUE(g.normal(r, c).isApprox(Vec3::UnitZ()));
    }
  }
}

TEST(Rasterize, SphereNormals) {
  const double radius = 40;
  const Vec3 center(50, 50, 0);
  const auto m = make_icosphere(6, radius, center);
  const auto g = rasterize_geometry(m, 100, 100);
  int checked = 0;
  for (int r = 0; r < 100; ++r) {
    for (int c = 0; c < 100; ++c) {
      const double x = c + 0.5 - center.x();
      const double y = r + 0.5 - center.y();
      const double d2 = x * x + y * y;
      if (d2 > 0.81 * radius * radius) continue;
      ASSERT_TRUE(g.covered(r, c));
      const Vec3 analytic = Vec3(x, y, std::sqrt(radius * radius - d2)) / radius;
      EXPECT_LT((g.normal(r, c) - analytic).norm(), 1e-3) << r << "," << c;
      ++checked;
    }
  }
  EXPECT_GT(checked, 3000);
}
