#include "srelight/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "srelight/border_weights.hpp"
#include "srelight/image_io.hpp"
#include "srelight/json_io.hpp"
#include "srelight/lighting.hpp"
#include "srelight/mesh.hpp"
#include "srelight/metrics.hpp"
#include "srelight/parallel.hpp"
#include "srelight/relight.hpp"
#include "srelight/shadow.hpp"
#include "srelight/synth.hpp"

namespace fs = std::filesystem;

namespace srelight {

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

namespace {

struct GlobalOptions {
  int threads = 0;
  bool json_errors = false;
  bool force = false;
};

void require_input(const std::string& path) {
  if (!fs::exists(path)) throw ParameterError("input file not found: " + path);
}

/// Refuses to clobber existing outputs unless --force was given.
class OutputDir {
 public:
  OutputDir(const std::string& dir, bool force) : dir_(dir), force_(force) { fs::create_directories(dir_); }

  fs::path claim(const std::string& name) const {
    fs::path p = dir_ / name;
    if (!force_ && fs::exists(p)) throw ParameterError("refusing to overwrite " + p.string() + " (use --force)");
    return p;
  }

  /// Checks every name up front so a run never half-writes a bundle.
  void claim_all(const std::vector<std::string>& names) const {
    for (const auto& n : names) claim(n);
  }

 private:
  fs::path dir_;
  bool force_;
};

std::pair<int, int> parse_size(const std::string& text) {
  int w = 0;
  int h = 0;
  char x = 0;
  std::istringstream in(text);
  if (!(in >> w >> x >> h) || (x != 'x' && x != 'X') || w < 1 || h < 1 || !in.eof()) {
    throw ParameterError("size must look like WIDTHxHEIGHT, got \"" + text + "\"");
  }
  return {w, h};
}

ImagePlane read_plane_any(const std::string& path) {
  const fs::path p(path);
  if (p.extension() == ".pfm") return read_pfm(p);
  return luminance(read_png(p));
}

/// Masks from PNG are thresholded at one half; PFM masks are taken as is.
ImagePlane read_mask(const std::string& path) {
  ImagePlane m = read_plane_any(path);
  if (fs::path(path).extension() != ".pfm") m = (m >= 0.5).cast<double>();
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const double v = m.data()[i];
    if (v != 0.0 && v != 1.0) throw DomainError(path + ": mask sample " + std::to_string(v) + " is not 0 or 1");
  }
  return m;
}

ShadowMask mask_with_coverage(const std::string& mask_path, const std::string& coverage_path) {
  ShadowMask m;
  m.mask = read_mask(mask_path);
  m.coverage = coverage_path.empty() ? ImagePlane::Ones(m.mask.rows(), m.mask.cols()) : read_mask(coverage_path);
  require_same_shape(m.mask, m.coverage, "mask/coverage");
  return m;
}

// --- border parameter flags shared by border-weights and relight -------------

struct BorderFlags {
  std::string params_file;
  std::optional<int> window;
  std::optional<double> tau1, tau2, sigma_max;
  std::optional<int> r_max;
  std::optional<std::string> contrast_source;
  std::optional<std::string> background;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--border-params", params_file, "JSON file with border parameters");
    cmd->add_option("--window", window, "Box filter and derivative window (odd)");
    cmd->add_option("--tau1", tau1, "Lower smoothed-mask threshold");
    cmd->add_option("--tau2", tau2, "Upper smoothed-mask threshold");
    cmd->add_option("--sigma-max", sigma_max, "Maximum Gaussian deviation");
    cmd->add_option("--r-max", r_max, "Maximum neighborhood radius in pixels");
    cmd->add_option("--contrast-source", contrast_source, "luminance or mask");
    cmd->add_option("--background", background, "How off-face pixels enter smoothing: excluded or shadow");
  }

  BorderParams resolve() const {
    BorderParams p;
    if (!params_file.empty()) {
      require_input(params_file);
      p = border_params_from_json(read_json(params_file));
    }
    if (window) p.window = *window;
    if (tau1) p.tau1 = *tau1;
    if (tau2) p.tau2 = *tau2;
    if (sigma_max) p.sigma_max = *sigma_max;
    if (r_max) p.r_max = *r_max;
    if (contrast_source) {
      if (*contrast_source == "mask") {
        p.contrast_source = ContrastSource::Mask;
      } else if (*contrast_source == "luminance") {
        p.contrast_source = ContrastSource::Luminance;
      } else {
        throw ParameterError("--contrast-source must be luminance or mask");
      }
    }
    if (background) {
      if (*background == "excluded") {
        p.background = Background::Excluded;
      } else if (*background == "shadow") {
        p.background = Background::Shadow;
      } else {
        throw ParameterError("--background must be excluded or shadow");
      }
    }
    p.validate();
    return p;
  }
};

void write_mask(const OutputDir& out, const std::string& stem, const ShadowMask& mask) {
  write_pfm(out.claim(stem + ".pfm"), mask.mask);
  write_png_gray(out.claim(stem + ".png"), mask.mask);
}

void write_weights(const OutputDir& out, const std::string& stem, const ImagePlane& weights, double cap) {
  write_pfm(out.claim(stem + ".pfm"), weights);
  write_png_gray(out.claim(stem + "_vis.png"), weights, 1.0 / cap);
}

// --- shadow-mask --------------------------------------------------------------

struct ShadowMaskCmd {
  std::string mesh, pose, light, size, out = ".";
  double feeler_offset = ShadowOptions{}.feeler_offset;

  void run(const GlobalOptions& g) const {
    for (const auto& p : {mesh, pose, light}) require_input(p);
    const auto [w, h] = parse_size(size);
    OutputDir dir(out, g.force);
    dir.claim_all({"mask.png", "mask.pfm", "coverage.pfm", "normal_x.pfm", "normal_y.pfm", "normal_z.pfm",
                   "depth.pfm"});
    const TriMesh posed = apply_pose(load_obj(mesh), pose_from_json(read_json(pose)));
    const LightSpec l = light_from_json(read_json(light));
    const GBuffer gb = rasterize_geometry(posed, w, h);
    const ShadowMask m = shadow_mask(gb, posed, l, ShadowOptions{feeler_offset});
    write_mask(dir, "mask", m);
    write_pfm(dir.claim("coverage.pfm"), gb.hit_mask);
    write_pfm(dir.claim("normal_x.pfm"), gb.normal_x);
    write_pfm(dir.claim("normal_y.pfm"), gb.normal_y);
    write_pfm(dir.claim("normal_z.pfm"), gb.normal_z);
    write_pfm(dir.claim("depth.pfm"), gb.depth);
  }
};

// --- border-weights -----------------------------------------------------------

struct BorderWeightsCmd {
  std::string mask, luminance_path, coverage, out = ".";
  double gamma = kDefaultGamma;
  BorderFlags flags;

  void run(const GlobalOptions& g) const {
    require_input(mask);
    require_input(luminance_path);
    if (!coverage.empty()) require_input(coverage);
    const BorderParams params = flags.resolve();
    OutputDir dir(out, g.force);
    dir.claim_all({"weights.pfm", "weights_vis.png"});
    const ShadowMask m = mask_with_coverage(mask, coverage);
    const ImagePlane y = gamma_encode(read_plane_any(luminance_path).cwiseMax(0.0), gamma);
    const ImagePlane w = border_weights(m, y, params);
    write_weights(dir, "weights", w, params.w_cap);
  }
};

// --- ambient ------------------------------------------------------------------

struct AmbientCmd {
  std::string image, mask, coverage, out;
  std::optional<double> ambient_default;

  void run(const GlobalOptions& g) const {
    require_input(image);
    require_input(mask);
    if (!coverage.empty()) require_input(coverage);
    const ShadowMask m = mask_with_coverage(mask, coverage);
    const ImagePlane y = read_plane_any(image);
    double a = 0;
    bool fallback = false;
    try {
      a = estimate_ambient(y, m);
    } catch (const NoShadowPixelsError&) {
      if (!ambient_default) throw;
      a = *ambient_default;
      fallback = true;
    }
    Json doc{{"ambient", a}};
    if (fallback) doc["fallback"] = true;
    if (!out.empty()) {
      if (!g.force && fs::exists(out)) throw ParameterError("refusing to overwrite " + out + " (use --force)");
      write_json(out, doc);
    }
    std::cout << doc.dump() << "\n";
  }
};

// --- relight ------------------------------------------------------------------

struct RelightCmd {
  std::string source, mesh, pose, source_light, target_light, out = ".";
  std::optional<double> ambient, ambient_default, target_ambient;
  std::string convention = "direct";
  double epsilon = kRatioEpsilon;
  double gamma = kDefaultGamma;
  double feeler_offset = ShadowOptions{}.feeler_offset;
  BorderFlags flags;

  void run(const GlobalOptions& g) const {
    for (const auto& p : {source, mesh, pose, source_light, target_light}) require_input(p);
    RelightOptions options;
    options.ambient = ambient;
    options.ambient_default = ambient_default;
    options.target_ambient = target_ambient;
    if (convention == "irradiance") {
      options.convention = AmbientConvention::Irradiance;
    } else if (convention != "direct") {
      throw ParameterError("--ambient-convention must be direct or irradiance");
    }
    options.epsilon = epsilon;
    options.gamma = gamma;
    options.shadow.feeler_offset = feeler_offset;
    options.border = flags.resolve();

    OutputDir dir(out, g.force);
    dir.claim_all({"relit.png", "ratio.pfm", "mask_source.pfm", "mask_source.png", "mask_target.pfm",
                   "mask_target.png", "weights_source.pfm", "weights_source_vis.png", "weights_target.pfm",
                   "weights_target_vis.png", "lighting_source.json", "lighting_target.json", "manifest.json"});

    const ColorImaged photo = read_png(source);
    const TriMesh posed = apply_pose(load_obj(mesh), pose_from_json(read_json(pose)));
    const LightInput ls = light_input_from_json(read_json(source_light));
    const LightInput lt = light_input_from_json(read_json(target_light));
    const GBuffer gb = rasterize_geometry(posed, static_cast<int>(photo.width()), static_cast<int>(photo.height()));
    const RelightResult r = relight(photo, gb, posed, ls, lt, options);

    write_png(dir.claim("relit.png"), r.relit);
    write_pfm(dir.claim("ratio.pfm"), r.ratio.values);
    write_mask(dir, "mask_source", r.source_mask);
    write_mask(dir, "mask_target", r.target_mask);
    write_weights(dir, "weights_source", r.source_weights, options.border.w_cap);
    write_weights(dir, "weights_target", r.target_weights, options.border.w_cap);
    write_json(dir.claim("lighting_source.json"), to_json(r.source_lighting));
    write_json(dir.claim("lighting_target.json"), to_json(r.target_lighting));

    Json inputs = Json::object();
    for (const auto& [role, path] : {std::pair<const char*, const std::string&>{"source", source},
                                     {"mesh", mesh},
                                     {"pose", pose},
                                     {"source_light", source_light},
                                     {"target_light", target_light}}) {
      inputs[role] = Json{{"path", fs::path(path).filename().string()}, {"sha256", sha256_file(path)}};
    }
    Json params{{"epsilon", epsilon},
                {"gamma", gamma},
                {"feeler_offset", feeler_offset},
                {"ambient_convention", convention},
                {"border", to_json(options.border)},
                {"source_ambient", r.source_lighting.ambient},
                {"target_ambient", r.target_lighting.ambient}};
    if (ambient) params["ambient"] = *ambient;
    if (ambient_default) params["ambient_default"] = *ambient_default;
    if (target_ambient) params["target_ambient_override"] = *target_ambient;
    Json outputs = Json::array();
    for (const char* name : {"relit.png", "ratio.pfm", "mask_source.pfm", "mask_source.png", "mask_target.pfm",
                             "mask_target.png", "weights_source.pfm", "weights_source_vis.png",
                             "weights_target.pfm", "weights_target_vis.png", "lighting_source.json",
                             "lighting_target.json"}) {
      outputs.push_back(name);
    }
    write_json(dir.claim("manifest.json"),
               Json{{"command", "relight"}, {"inputs", inputs}, {"parameters", params}, {"outputs", outputs}});
  }
};

// --- eval ---------------------------------------------------------------------

struct EvalCmd {
  std::string relit_dir, target_dir, out;
  std::string pred_ratios, true_ratios, source_weights, target_weights, pred_lightings, true_lightings;
  std::string mode = "luminance";

  static std::optional<fs::path> companion(const std::string& dir, const std::string& stem, const char* ext) {
    if (dir.empty()) return std::nullopt;
    fs::path p = fs::path(dir) / (stem + ext);
    if (!fs::exists(p)) throw DomainError("missing companion file " + p.string());
    return p;
  }

  void run(const GlobalOptions& g) const {
    for (const auto& d : {relit_dir, target_dir}) {
      if (!fs::is_directory(d)) throw ParameterError("not a directory: " + d);
    }
    EvalMode eval_mode = EvalMode::Luminance;
    if (mode == "rgb") {
      eval_mode = EvalMode::Rgb;
    } else if (mode != "luminance") {
      throw ParameterError("--mode must be luminance or rgb");
    }
    if (!out.empty() && !g.force && fs::exists(out)) throw ParameterError("refusing to overwrite " + out);

    std::vector<fs::path> relit_files;
    for (const auto& entry : fs::directory_iterator(relit_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".png") relit_files.push_back(entry.path());
    }
    std::sort(relit_files.begin(), relit_files.end());
    if (relit_files.empty()) throw DomainError("no .png files in " + relit_dir);

    std::vector<std::pair<std::string, MetricReport>> reports;
    for (const auto& path : relit_files) {
      const std::string name = path.filename().string();
      const std::string stem = path.stem().string();
      const fs::path target = fs::path(target_dir) / name;
      if (!fs::exists(target)) throw DomainError("no target image for " + name + " in " + target_dir);
      EvalExtras extras;
      if (auto p = companion(pred_ratios, stem, ".pfm")) extras.pred_ratio = RatioImage{read_pfm(*p)};
      if (auto p = companion(true_ratios, stem, ".pfm")) extras.true_ratio = RatioImage{read_pfm(*p)};
      if (auto p = companion(source_weights, stem, ".pfm")) extras.source_weights = read_pfm(*p);
      if (auto p = companion(target_weights, stem, ".pfm")) extras.target_weights = read_pfm(*p);
      if (auto p = companion(pred_lightings, stem, ".json")) extras.pred_lighting = sh_lighting_from_json(read_json(*p));
      if (auto p = companion(true_lightings, stem, ".json")) extras.true_lighting = sh_lighting_from_json(read_json(*p));
      reports.emplace_back(name, evaluate(read_png(path), read_png(target), extras, eval_mode));
    }
    const Json doc = to_json(aggregate(std::move(reports)));
    if (!out.empty()) {
      write_json(out, doc);
    } else {
      std::cout << doc.dump(2) << "\n";
    }
  }
};

// --- synth --------------------------------------------------------------------

struct SynthCmd {
  std::string scene, size, out = ".";
  std::uint64_t seed = 0;

  void run(const GlobalOptions& g) const {
    const auto& names = scene_names();
    if (std::find(names.begin(), names.end(), scene) == names.end()) {
      throw ParameterError("unknown scene \"" + scene + "\"");
    }
    std::string dims = size;
    if (dims.empty()) dims = scene == "two_step" ? "160x64" : "128x128";
    const auto [w, h] = parse_size(dims);
    OutputDir dir(out, g.force);
    const SynthScene s = make_scene(scene, w, h, seed);

    Json manifest{{"scene", s.name}, {"width", w}, {"height", h}, {"seed", seed}};
    if (s.mesh) {
      dir.claim_all({"mesh.obj", "pose.json", "source_light.json", "target_light.json", "source.png",
                     "mask_source_gt.pfm", "mask_source_gt.png", "mask_target_gt.pfm", "mask_target_gt.png",
                     "coverage_gt.pfm", "scene.json"});
      write_obj(dir.claim("mesh.obj"), *s.mesh);
      write_json(dir.claim("pose.json"), to_json(s.pose));
      write_json(dir.claim("source_light.json"), to_json(s.source_light));
      write_json(dir.claim("target_light.json"), to_json(s.target_light));
      write_png(dir.claim("source.png"), s.source);
      write_mask(dir, "mask_source_gt", s.source_mask);
      write_mask(dir, "mask_target_gt", s.target_mask);
      write_pfm(dir.claim("coverage_gt.pfm"), s.source_mask.coverage);
      manifest["ambient"] = s.ambient;
      manifest["triangles"] = s.mesh->triangle_count();
    } else {
      dir.claim_all({"mask.pfm", "mask.png", "luminance.png", "scene.json"});
      write_mask(dir, "mask", s.source_mask);
      write_png(dir.claim("luminance.png"), s.source);
    }
    write_json(dir.claim("scene.json"), manifest);
  }
};

void report_error(const std::string& kind, const std::string& message, int code, bool json) {
  if (json) {
    std::cerr << Json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << "\n";
  } else {
    std::cerr << "srelight: " << message << "\n";
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Shadow-aware ratio-image relighting toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions global;
  app.add_option("--threads", global.threads, "Worker threads (0 = SRELIGHT_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--json-errors", global.json_errors, "Report errors on stderr as JSON");
  app.add_flag("--force", global.force, "Overwrite existing outputs");

  ShadowMaskCmd shadow_cmd;
  auto* sm = app.add_subcommand("shadow-mask", "Binary shadow mask of a posed mesh under a light");
  sm->add_option("mesh", shadow_cmd.mesh, "OBJ mesh")->required();
  sm->add_option("pose", shadow_cmd.pose, "Pose JSON")->required();
  sm->add_option("light", shadow_cmd.light, "Light JSON")->required();
  sm->add_option("--size", shadow_cmd.size, "Raster size WIDTHxHEIGHT")->required();
  sm->add_option("--out", shadow_cmd.out, "Output directory");
  sm->add_option("--feeler-offset", shadow_cmd.feeler_offset, "Feeler origin offset (fraction of bbox diagonal)");

  BorderWeightsCmd border_cmd;
  auto* bw = app.add_subcommand("border-weights", "Shadow-border weight map from a mask and an image");
  bw->add_option("mask", border_cmd.mask, "Mask (.pfm or .png)")->required();
  bw->add_option("luminance", border_cmd.luminance_path, "Image (.png) or luminance plane (.pfm)")->required();
  bw->add_option("--coverage", border_cmd.coverage, "Face coverage plane (default: everything)");
  bw->add_option("--gamma", border_cmd.gamma, "Gamma applied to the luminance before measuring contrast");
  bw->add_option("--out", border_cmd.out, "Output directory");
  border_cmd.flags.add_to(bw);

  AmbientCmd ambient_cmd;
  auto* am = app.add_subcommand("ambient", "Ambient light estimate from shadow pixels");
  am->add_option("image", ambient_cmd.image, "Image (.png) or luminance plane (.pfm)")->required();
  am->add_option("mask", ambient_cmd.mask, "Mask (.pfm or .png)")->required();
  am->add_option("--coverage", ambient_cmd.coverage, "Face coverage plane (default: everything)");
  am->add_option("--ambient-default", ambient_cmd.ambient_default, "Value to report when there are no shadows");
  am->add_option("--out", ambient_cmd.out, "Also write the JSON to this file");

  RelightCmd relight_cmd;
  auto* rl = app.add_subcommand("relight", "Relight a photo aligned with a posed mesh");
  rl->add_option("source", relight_cmd.source, "Source photo (.png)")->required();
  rl->add_option("mesh", relight_cmd.mesh, "OBJ mesh")->required();
  rl->add_option("pose", relight_cmd.pose, "Pose JSON")->required();
  rl->add_option("source_light", relight_cmd.source_light, "Source light JSON")->required();
  rl->add_option("target_light", relight_cmd.target_light, "Target light JSON")->required();
  rl->add_option("--out", relight_cmd.out, "Output directory");
  rl->add_option("--ambient", relight_cmd.ambient, "Fixed ambient for both lights instead of estimating it");
  rl->add_option("--ambient-default", relight_cmd.ambient_default, "Ambient when the photo has no shadow pixels");
  rl->add_option("--target-ambient", relight_cmd.target_ambient, "Ambient for the target light");
  rl->add_option("--ambient-convention", relight_cmd.convention, "direct or irradiance");
  rl->add_option("--epsilon", relight_cmd.epsilon, "Ratio floor");
  rl->add_option("--gamma", relight_cmd.gamma, "Gamma of the ratio space");
  rl->add_option("--feeler-offset", relight_cmd.feeler_offset, "Feeler origin offset (fraction of bbox diagonal)");
  relight_cmd.flags.add_to(rl);

  EvalCmd eval_cmd;
  auto* ev = app.add_subcommand("eval", "Metric report over matching relit/target images");
  ev->add_option("relit_dir", eval_cmd.relit_dir, "Directory of relit .png files")->required();
  ev->add_option("target_dir", eval_cmd.target_dir, "Directory of target .png files with the same names")->required();
  ev->add_option("--pred-ratios", eval_cmd.pred_ratios, "Directory of predicted ratio .pfm files");
  ev->add_option("--true-ratios", eval_cmd.true_ratios, "Directory of ground-truth ratio .pfm files");
  ev->add_option("--source-weights", eval_cmd.source_weights, "Directory of source weight .pfm files");
  ev->add_option("--target-weights", eval_cmd.target_weights, "Directory of target weight .pfm files");
  ev->add_option("--pred-lightings", eval_cmd.pred_lightings, "Directory of predicted lighting .json files");
  ev->add_option("--true-lightings", eval_cmd.true_lightings, "Directory of ground-truth lighting .json files");
  ev->add_option("--mode", eval_cmd.mode, "luminance or rgb");
  ev->add_option("--out", eval_cmd.out, "Report path (default: stdout)");

  SynthCmd synth_cmd;
  auto* sy = app.add_subcommand("synth", "Write a synthetic fixture bundle");
  sy->add_option("scene", synth_cmd.scene, "sphere, box_on_plane, two_spheres or two_step")->required();
  sy->add_option("--size", synth_cmd.size, "Raster size WIDTHxHEIGHT");
  sy->add_option("--seed", synth_cmd.seed, "Seed for the albedo texture");
  sy->add_option("--out", synth_cmd.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    report_error("usage", e.what(), 2, global.json_errors);
    return 2;
  }

  try {
    set_thread_count(global.threads);
    if (*sm) shadow_cmd.run(global);
    if (*bw) border_cmd.run(global);
    if (*am) ambient_cmd.run(global);
    if (*rl) relight_cmd.run(global);
    if (*ev) eval_cmd.run(global);
    if (*sy) synth_cmd.run(global);
  } catch (const Error& e) {
    report_error(e.kind(), e.what(), e.exit_code(), global.json_errors);
    return e.exit_code();
  } catch (const nlohmann::json::exception& e) {
    report_error("parse", e.what(), 3, global.json_errors);
    return 3;
  } catch (const fs::filesystem_error& e) {
    report_error("io", e.what(), 3, global.json_errors);
    return 3;
  }
  return 0;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("srelight");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace srelight
