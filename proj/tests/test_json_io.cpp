#include <gtest/gtest.h>

#include "srelight/json_io.hpp"

using namespace srelight;

TEST(JsonIo, PoseRoundTrip) {
  Pose p;
  p.rotation = Eigen::AngleAxisd(0.7, Vec3(1, 2, 3).normalized()).toRotationMatrix();
  p.translation = Vec3(4, 5, 6);
  p.scale = 2.5;
  const Pose q = pose_from_json(to_json(p));
  EXPECT_TRUE(q.rotation.isApprox(p.rotation, 1e-15));
  EXPECT_EQ(q.translation, p.translation);
  EXPECT_EQ(q.scale, p.scale);
}

TEST(JsonIo, PoseFromMatrix) {
  const Json doc = Json::parse(R"({"matrix":[2,0,0,1, 0,2,0,2, 0,0,2,3, 0,0,0,1]})");
  const Pose p = pose_from_json(doc);
  EXPECT_NEAR(p.scale, 2, 1e-12);
  EXPECT_TRUE(p.apply(Vec3(1, 1, 1)).isApprox(Vec3(3, 4, 5)));
  EXPECT_THROW(pose_from_json(Json::parse(R"({"rotation":[1,0,0,0,1,0,0,0,1]})")), ParseError);
}

TEST(JsonIo, LightNormalizesDirection) {
  const auto l = light_from_json(Json::parse(R"({"type":"directional","direction":[0,0,3],"intensity":0.5})"));
  EXPECT_TRUE(l.direction.isApprox(Vec3::UnitZ()));
  EXPECT_EQ(l.intensity, 0.5);
  EXPECT_EQ(light_from_json(to_json(l)), l);
  EXPECT_THROW(light_from_json(Json::parse(R"({"type":"spot"})")), ParseError);
  EXPECT_THROW(light_from_json(Json::parse(R"({"type":"directional","direction":[0,0,0]})")), ParameterError);
}

TEST(JsonIo, ShOnlyLightDerivesShadowDirection) {
  const auto in = light_input_from_json(Json::parse(R"({"sh":[1, 0.2, 0.5, 0.1, 0,0,0,0,0]})"));
  ASSERT_TRUE(in.sh);
  EXPECT_EQ(in.sh->coeffs[2], 0.5);
  // band 1 is ordered (y, z, x)
  EXPECT_TRUE(in.spec.direction.isApprox(Vec3(0.1, 0.2, 0.5).normalized()));
}

TEST(JsonIo, ShLightingConvention) {
  const auto l = sh_lighting_from_json(Json::parse(R"({"sh":[0,0,0,0,0,0,0,0,0],"ambient":0.2,
                                                     "ambient_convention":"irradiance"})"));
  EXPECT_EQ(l.convention, AmbientConvention::Irradiance);
  const auto back = sh_lighting_from_json(to_json(l));
  EXPECT_EQ(back.convention, AmbientConvention::Irradiance);
  EXPECT_EQ(back.ambient, 0.2);
}

TEST(JsonIo, BorderParams) {
  const auto p = border_params_from_json(Json::parse(R"({"window":11,"tau1":0.1,"background":"shadow"})"));
  EXPECT_EQ(p.window, 11);
  EXPECT_EQ(p.tau1, 0.1);
  EXPECT_EQ(p.tau2, 0.98);
  EXPECT_EQ(p.background, Background::Shadow);
  const auto q = border_params_from_json(to_json(p));
  EXPECT_EQ(q.window, 11);
  EXPECT_EQ(q.background, Background::Shadow);
  EXPECT_THROW(border_params_from_json(Json::parse(R"({"tau1":0.9,"tau2":0.1})")), ParameterError);
  EXPECT_THROW(border_params_from_json(Json::parse(R"({"window":2.5})")), ParseError);
}

TEST(JsonIo, BatchReportShape) {
  MetricReport r;
  r.values = {{"mse", 0.5}};
  r.pixel_count = 4;
  const Json doc = to_json(aggregate({{"x.png", r}}));
  EXPECT_EQ(doc.at("per_image")[0].at("path"), "x.png");
  EXPECT_EQ(doc.at("per_image")[0].at("mse"), 0.5);
  EXPECT_EQ(doc.at("mean").at("mse"), 0.5);
  EXPECT_EQ(doc.at("stddev").at("mse"), 0.0);
}
