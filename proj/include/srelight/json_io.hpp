#pragma once

#include <filesystem>

#include "json.hpp"
#include "srelight/border_weights.hpp"
#include "srelight/lighting.hpp"
#include "srelight/mesh.hpp"
#include "srelight/metrics.hpp"
#include "srelight/relight.hpp"
#include "srelight/shadow.hpp"

namespace srelight {

using Json = nlohmann::ordered_json;

/// Parses a file; ParseError on malformed JSON.
Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& doc);

/// {"rotation": [9 row-major], "translation": [3], "scale": s} or
/// {"matrix": [16 row-major homogeneous]}.
Pose pose_from_json(const Json& doc);
Json to_json(const Pose& pose);

/// {"type":"directional","direction":[x,y,z],"intensity":i} or
/// {"type":"point","position":[x,y,z],"intensity":i}. Directions are
/// normalized on load.
LightSpec light_from_json(const Json& doc);
Json to_json(const LightSpec& light);

/// {"sh":[9 floats],"ambient":a} or a light document, which is projected
/// from `reference_point`. Optional "ambient_convention": "direct" or
/// "irradiance".
ShLighting sh_lighting_from_json(const Json& doc, const Vec3& reference_point = Vec3::Zero());
Json to_json(const ShLighting& lighting);

/// A light usable for both shadows and shading. A document with "type" gives
/// the geometric light; "sh" (alone or alongside) gives explicit
/// coefficients. An "sh"-only document casts shadows from the direction of
/// its band-1 coefficients.
LightInput light_input_from_json(const Json& doc);

/// Overrides the fields present in `doc` on top of `base`.
BorderParams border_params_from_json(const Json& doc, BorderParams base = {});
Json to_json(const BorderParams& params);

Json to_json(const MetricReport& report);
Json to_json(const BatchReport& batch);

}  // namespace srelight
