#include "srelight/json_io.hpp"

#include <cmath>
#include <fstream>

namespace srelight {
namespace {

template <int N>
Eigen::Matrix<double, N, 1> vec_from(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing \"") + key + "\"");
  const Json& arr = doc.at(key);
  if (!arr.is_array() || arr.size() != N) {
    throw ParseError(std::string("\"") + key + "\" must be an array of " + std::to_string(N) + " numbers");
  }
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) {
    if (!arr[static_cast<std::size_t>(i)].is_number()) throw ParseError(std::string("\"") + key + "\" holds a non-number");
    v[i] = arr[static_cast<std::size_t>(i)].get<double>();
  }
  return v;
}

double number_from(const Json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_number()) throw ParseError(std::string("\"") + key + "\" must be a number");
  return doc.at(key).get<double>();
}

template <typename Derived>
Json array_of(const Eigen::MatrixBase<Derived>& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

}  // namespace

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << "\n";
  if (!out) throw IoError("write failed for " + path.string());
}

Pose pose_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("pose must be a JSON object");
  if (doc.contains("matrix")) {
    const auto flat = vec_from<16>(doc, "matrix");
    Eigen::Matrix4d m;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) m(r, c) = flat[4 * r + c];
    }
    return Pose::from_matrix(m);
  }
  Pose p;
  const auto flat = vec_from<9>(doc, "rotation");
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) p.rotation(r, c) = flat[3 * r + c];
  }
  p.translation = vec_from<3>(doc, "translation");
  p.scale = number_from(doc, "scale", 1.0);
  p.validate();
  return p;
}

Json to_json(const Pose& pose) {
  Json rot = Json::array();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) rot.push_back(pose.rotation(r, c));
  }
  return Json{{"rotation", rot}, {"translation", array_of(pose.translation)}, {"scale", pose.scale}};
}

LightSpec light_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("type") || !doc.at("type").is_string()) {
    throw ParseError("light needs a \"type\" of \"directional\" or \"point\"");
  }
  const auto type = doc.at("type").get<std::string>();
  const double intensity = number_from(doc, "intensity", 1.0);
  if (type == "directional") {
    const Vec3 d = vec_from<3>(doc, "direction");
    if (!(d.norm() > 0)) throw ParameterError("directional light direction is zero");
    return LightSpec::directional(d.normalized(), intensity);
  }
  if (type == "point") return LightSpec::point(vec_from<3>(doc, "position"), intensity);
  throw ParseError("unknown light type \"" + type + "\"");
}

Json to_json(const LightSpec& light) {
  if (light.kind == LightSpec::Kind::Directional) {
    return Json{{"type", "directional"}, {"direction", array_of(light.direction)}, {"intensity", light.intensity}};
  }
  return Json{{"type", "point"}, {"position", array_of(light.position)}, {"intensity", light.intensity}};
}

ShLighting sh_lighting_from_json(const Json& doc, const Vec3& reference_point) {
  if (!doc.is_object()) throw ParseError("lighting must be a JSON object");
  ShLighting out;
  if (doc.contains("sh")) {
    out.coeffs = vec_from<9>(doc, "sh");
    out.ambient = number_from(doc, "ambient", 0.0);
    if (!(out.ambient >= 0)) throw ParameterError("ambient must be >= 0");
  } else if (doc.contains("type")) {
    out = project_light(light_from_json(doc), reference_point);
  } else {
    throw ParseError("lighting needs \"sh\" coefficients or a light \"type\"");
  }
  if (doc.contains("ambient_convention")) {
    const auto name = doc.at("ambient_convention").get<std::string>();
    if (name == "direct") {
      out.convention = AmbientConvention::Direct;
    } else if (name == "irradiance") {
      out.convention = AmbientConvention::Irradiance;
    } else {
      throw ParseError("unknown ambient_convention \"" + name + "\"");
    }
  }
  return out;
}

Json to_json(const ShLighting& lighting) {
  Json doc{{"sh", array_of(lighting.coeffs)}, {"ambient", lighting.ambient}};
  if (lighting.convention == AmbientConvention::Irradiance) doc["ambient_convention"] = "irradiance";
  return doc;
}

LightInput light_input_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("light must be a JSON object");
  LightInput input;
  if (doc.contains("type")) input.spec = light_from_json(doc);
  if (doc.contains("sh")) {
    input.sh = sh_lighting_from_json(Json{{"sh", doc.at("sh")}, {"ambient", number_from(doc, "ambient", 0.0)}});
    if (!doc.contains("type")) {
      // Band-1 coefficients are ordered (y, z, x).
      const Vec3 dir(input.sh->coeffs[3], input.sh->coeffs[1], input.sh->coeffs[2]);
      if (!(dir.norm() > 0)) throw ParameterError("SH lighting has no directional component to cast shadows from");
      input.spec = LightSpec::directional(dir.normalized(), 1.0);
    }
  }
  if (!doc.contains("type") && !doc.contains("sh")) throw ParseError("light needs \"type\" or \"sh\"");
  return input;
}

BorderParams border_params_from_json(const Json& doc, BorderParams base) {
  if (!doc.is_object()) throw ParseError("border params must be a JSON object");
  auto integer = [&](const char* key, int& field) {
    if (!doc.contains(key)) return;
    if (!doc.at(key).is_number_integer()) throw ParseError(std::string("\"") + key + "\" must be an integer");
    field = doc.at(key).get<int>();
  };
  integer("window", base.window);
  integer("r_max", base.r_max);
  base.tau1 = number_from(doc, "tau1", base.tau1);
  base.tau2 = number_from(doc, "tau2", base.tau2);
  base.sigma_max = number_from(doc, "sigma_max", base.sigma_max);
  if (doc.contains("contrast_source")) {
    const auto name = doc.at("contrast_source").get<std::string>();
    if (name == "luminance") {
      base.contrast_source = ContrastSource::Luminance;
    } else if (name == "mask") {
      base.contrast_source = ContrastSource::Mask;
    } else {
      throw ParameterError("contrast_source must be \"luminance\" or \"mask\"");
    }
  }
  if (doc.contains("background")) {
    const auto name = doc.at("background").get<std::string>();
    if (name == "excluded") {
      base.background = Background::Excluded;
    } else if (name == "shadow") {
      base.background = Background::Shadow;
    } else {
      throw ParameterError("background must be \"excluded\" or \"shadow\"");
    }
  }
  base.validate();
  return base;
}

Json to_json(const BorderParams& params) {
  return Json{{"window", params.window},
              {"tau1", params.tau1},
              {"tau2", params.tau2},
              {"sigma_max", params.sigma_max},
              {"r_max", params.r_max},
              {"w_cap", params.w_cap},
              {"contrast_source", params.contrast_source == ContrastSource::Mask ? "mask" : "luminance"},
              {"background", params.background == Background::Shadow ? "shadow" : "excluded"}};
}

Json to_json(const MetricReport& report) {
  Json doc = Json::object();
  for (const auto& [name, value] : report.values) doc[name] = value;
  doc["pixel_count"] = report.pixel_count;
  if (report.source_weighted_count) doc["source_weighted_count"] = *report.source_weighted_count;
  if (report.target_weighted_count) doc["target_weighted_count"] = *report.target_weighted_count;
  return doc;
}

Json to_json(const BatchReport& batch) {
  Json per_image = Json::array();
  for (const auto& [path, report] : batch.per_image) {
    Json entry{{"path", path}};
    entry.update(to_json(report));
    per_image.push_back(std::move(entry));
  }
  Json mean = Json::object();
  for (const auto& [k, v] : batch.mean) mean[k] = v;
  Json stddev = Json::object();
  for (const auto& [k, v] : batch.stddev) stddev[k] = v;
  return Json{{"per_image", per_image}, {"mean", mean}, {"stddev", stddev}};
}

}  // namespace srelight
