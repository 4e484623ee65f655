/*
 * Copyright 2026 The llflut Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "llflut/bench.hpp"
#include "llflut/color.hpp"
#include "llflut/cube.hpp"
#include "llflut/edge.hpp"
#include "llflut/image_io.hpp"
#include "llflut/llf.hpp"
#include "llflut/metrics.hpp"
#include "llflut/parallel.hpp"
#include "llflut/params.hpp"
#include "llflut/pipeline.hpp"
#include "llflut/pyramid.hpp"

namespace llflut::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw CliError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw CliError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void write_json(const json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw CliError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

PipelineConfig config_from_json(const json& j) {
  PipelineConfig cfg;
  cfg.target_low_res = j.value("target_low_res", cfg.target_low_res);
  cfg.lut_bins = j.value("lut_bins", cfg.lut_bins);
  cfg.basis_count = j.value("T", cfg.basis_count);
  cfg.sigma_r = j.value("sigma_r", cfg.sigma_r);
  const std::string mode = j.value("llf_mode", std::string("pointwise"));
  if (mode == "pointwise") {
    cfg.llf_mode = LlfMode::Pointwise;
  } else if (mode == "fast") {
    cfg.llf_mode = LlfMode::Fast;
  } else {
    throw CliError("config: llf_mode must be 'pointwise' or 'fast'");
  }
  cfg.fast_samples = j.value("fast_k", cfg.fast_samples);
  if (j.contains("edge")) {
    const json& e = j.at("edge");
    cfg.edge.blur_sigma = e.value("blur_sigma", cfg.edge.blur_sigma);
    cfg.edge.low_thresh = e.value("low", cfg.edge.low_thresh);
    cfg.edge.high_thresh = e.value("high", cfg.edge.high_thresh);
  }
  cfg.validate();
  return cfg;
}

Image to_working_space(Image img, const std::string& space) {
  if (img.channels() != 3) throw CliError("expected a 3-channel input image");
  if (space == "srgb") {
    img.set_space(ColorSpace::SRGB);
    return img;
  }
  if (space == "linear") {
    img.set_space(ColorSpace::LinearRGB);
    return img;
  }
  // XYZ input is mapped to display-referred sRGB.
  img.set_space(ColorSpace::CIEXYZ);
  return linear_to_srgb(clamp(xyz_to_linear_rgb(img)));
}

// Low-resolution level size for an h x w input.
std::pair<int, int> lr_dims(int h, int w, int target) {
  const int n = adaptive_levels(h, w, target);
  for (int k = 0; k < n; ++k) {
    h = (h + 1) / 2;
    w = (w + 1) / 2;
  }
  return {h, w};
}

struct EnhanceSetup {
  PipelineConfig cfg;
  EnhancementParams params;
};

EnhanceSetup setup_enhance(const Image& img, const std::string& bundle, const std::string& config) {
  EnhanceSetup s;
  if (!config.empty()) s.cfg = config_from_json(read_json(config));
  if (!bundle.empty()) {
    s.params = load_bundle(bundle);
    if (config.empty()) {
      s.cfg.basis_count = s.params.basis_count();
      s.cfg.lut_bins = s.params.luts.front().n_bins();
      s.cfg.sigma_r = s.params.sigma_r;
    }
  } else {
    const auto [h, w] = lr_dims(img.height(), img.width(), s.cfg.target_low_res);
    s.params = heuristic_params(Image(h, w, 3, ColorSpace::SRGB), s.cfg.basis_count, s.cfg.lut_bins);
    s.params.sigma_r = s.cfg.sigma_r;
  }
  return s;
}

void save_for_extension(const Image& img, const fs::path& path, bool as_float) {
  save_image(img, path, as_float ? FileKind::TiffFloat : kind_for_path(path));
}

json summary_json(const Summary& s) {
  return {{"median_ms", s.median}, {"p95_ms", s.p95}, {"min_ms", s.min}, {"max_ms", s.max}};
}

std::string fmt_ms(double v) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(2) << v;
  return ss.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Image-adaptive 3D-LUT and local Laplacian photo enhancement engine", "llflut"};
  app.require_subcommand(1);

  int threads = 0;
  std::uint64_t seed = 1;
  app.add_option("--threads", threads, "Worker threads (default: LLF_THREADS or all cores)");
  app.add_option("--seed", seed, "Seed for synthetic inputs");

  // enhance
  std::string in_path, out_path, bundle_path, config_path, input_space = "srgb";
  auto* enh = app.add_subcommand("enhance", "Run the full enhancement pipeline");
  enh->add_option("--input", in_path, "Input TIFF/PNG")->required();
  enh->add_option("--output", out_path, "Output PNG/TIFF")->required();
  enh->add_option("--bundle", bundle_path, "LLFP1 parameter bundle (default: identity parameters)");
  enh->add_option("--config", config_path, "Pipeline config JSON");
  enh->add_option("--input-space", input_space, "Colour space of the input samples")
      ->check(CLI::IsMember({"srgb", "linear", "xyz"}));

  // decompose / reconstruct
  std::string out_dir, manifest_path;
  int levels = 0, target = 64;
  bool float_out = false;
  auto* dec = app.add_subcommand("decompose", "Write the Laplacian pyramid as float TIFFs plus a manifest");
  dec->add_option("--input", in_path)->required();
  dec->add_option("--out-dir", out_dir)->required();
  dec->add_option("--levels", levels, "Level count (0 = adaptive)")->check(CLI::NonNegativeNumber);
  dec->add_option("--target", target, "Coarsest-level size for adaptive depth")->check(CLI::PositiveNumber);
  auto* rec = app.add_subcommand("reconstruct", "Collapse a pyramid written by decompose");
  rec->add_option("--manifest", manifest_path)->required();
  rec->add_option("--output", out_path)->required();
  rec->add_flag("--float", float_out, "Write a 32-bit float TIFF");

  // lut-apply
  std::string lut_path;
  auto* lut = app.add_subcommand("lut-apply", "Apply a .cube 3D LUT with trilinear interpolation");
  lut->add_option("--input", in_path)->required();
  lut->add_option("--lut", lut_path)->required();
  lut->add_option("--output", out_path)->required();

  // llf
  float alpha = 1.0f, beta = 1.0f, sigma_r = kDefaultSigmaR;
  int samples = kDefaultFastSamples;
  bool direct = false;
  auto* llf = app.add_subcommand("llf", "Local Laplacian filter");
  llf->add_option("--input", in_path)->required();
  llf->add_option("--output", out_path)->required();
  llf->add_option("--alpha", alpha)->check(CLI::PositiveNumber);
  llf->add_option("--beta", beta)->check(CLI::NonNegativeNumber);
  llf->add_option("--sigma-r", sigma_r)->check(CLI::PositiveNumber);
  llf->add_option("--k", samples, "Intensity samples of the fast filter")->check(CLI::Range(2, 1024));
  llf->add_option("--levels", levels, "Level count (0 = adaptive)")->check(CLI::NonNegativeNumber);
  llf->add_flag("--direct", direct, "Use the direct (reference) filter");
  llf->add_flag("--float", float_out, "Write a 32-bit float TIFF");

  // edges
  CannyParams canny_params;
  auto* edg = app.add_subcommand("edges", "Canny edge mask as 8-bit PNG");
  edg->add_option("--input", in_path)->required();
  edg->add_option("--output", out_path)->required();
  edg->add_option("--sigma", canny_params.blur_sigma)->check(CLI::NonNegativeNumber);
  edg->add_option("--low", canny_params.low_thresh);
  edg->add_option("--high", canny_params.high_thresh);

  // eval
  std::string a_path, b_path;
  bool as_json = false;
  auto* ev = app.add_subcommand("eval", "PSNR / SSIM / Delta E between two images");
  ev->add_option("--a", a_path)->required();
  ev->add_option("--b", b_path)->required();
  ev->add_flag("--json", as_json, "Emit the report as JSON");

  // bench
  std::string sizes = "480p,4k";
  int reps = 10;
  auto* bn = app.add_subcommand("bench", "Time the pipeline on synthetic images");
  bn->add_option("--sizes", sizes, "Comma-separated sizes: 480p, 720p, 1080p, 4k or HxW");
  bn->add_option("--reps", reps)->check(CLI::PositiveNumber);
  bn->add_option("--config", config_path);
  bn->add_flag("--json", as_json, "Emit the report as JSON");

  // export-conditioning
  auto* exp = app.add_subcommand("export-conditioning", "Write per-level predictor inputs as float TIFF + JSON");
  exp->add_option("--input", in_path)->required();
  exp->add_option("--out-dir", out_dir)->required();
  exp->add_option("--bundle", bundle_path);
  exp->add_option("--config", config_path);
  exp->add_option("--input-space", input_space)->check(CLI::IsMember({"srgb", "linear", "xyz"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  if (threads <= 0) {
    if (const char* env = std::getenv("LLF_THREADS")) threads = std::atoi(env);
  }
  set_thread_count(threads);

  try {
    if (enh->parsed()) {
      const Image img = to_working_space(load_image(in_path), input_space);
      const EnhanceSetup s = setup_enhance(img, bundle_path, config_path);
      save_image(enhance(img, s.params, s.cfg), out_path, kind_for_path(out_path));
    } else if (dec->parsed()) {
      const Image img = load_image(in_path);
      const int n = levels > 0 ? levels : adaptive_levels(img.height(), img.width(), target);
      if (n < 1) throw CliError("image too small to decompose");
      const LaplacianPyramid pyr = laplacian_decompose(img, n);
      fs::create_directories(out_dir);
      json m;
      m["levels"] = n;
      m["channels"] = img.channels();
      m["space"] = std::string(to_string(img.space()));
      json bands = json::array();
      for (int k = 0; k < n; ++k) {
        std::ostringstream name;
        name << "band_" << std::setw(2) << std::setfill('0') << k << ".tif";
        save_image(pyr.bands[k], fs::path(out_dir) / name.str(), FileKind::TiffFloat);
        bands.push_back({{"file", name.str()}, {"height", pyr.bands[k].height()}, {"width", pyr.bands[k].width()}});
      }
      m["bands"] = bands;
      save_image(pyr.residual, fs::path(out_dir) / "residual.tif", FileKind::TiffFloat);
      m["residual"] = {{"file", "residual.tif"}, {"height", pyr.residual.height()}, {"width", pyr.residual.width()}};
      write_json(m, fs::path(out_dir) / "manifest.json");
    } else if (rec->parsed()) {
      const json m = read_json(manifest_path);
      const fs::path dir = fs::path(manifest_path).parent_path();
      LaplacianPyramid pyr;
      auto load_level = [&](const json& entry) {
        Image img = load_image(dir / entry.at("file").get<std::string>());
        if (img.height() != entry.at("height").get<int>() || img.width() != entry.at("width").get<int>()) {
          throw CliError("level " + entry.at("file").get<std::string>() + " does not match the manifest size");
        }
        return img;
      };
      for (const json& b : m.at("bands")) pyr.bands.push_back(load_level(b));
      pyr.residual = load_level(m.at("residual"));
      if (static_cast<int>(pyr.bands.size()) != m.at("levels").get<int>()) throw CliError("manifest level count mismatch");
      Image img = laplacian_reconstruct(pyr);
      if (!float_out) img = clamp(img);
      save_for_extension(img, out_path, float_out);
    } else if (lut->parsed()) {
      const Image img = load_image(in_path);
      save_image(clamp(apply_trilinear(load_cube(lut_path), img)), out_path, kind_for_path(out_path));
    } else if (llf->parsed()) {
      const Image img = clamp(load_image(in_path));
      const int n = levels > 0 ? levels : adaptive_levels(img.height(), img.width(), 64);
      if (n < 1) throw CliError("image too small to filter");
      Image res = direct ? direct_llf(img, alpha, beta, sigma_r, n) : fast_llf(img, alpha, beta, sigma_r, n, samples);
      if (!float_out) res = clamp(res);
      save_for_extension(res, out_path, float_out);
    } else if (edg->parsed()) {
      save_image(canny(load_image(in_path), canny_params), out_path, FileKind::Png8);
    } else if (ev->parsed()) {
      Image a = load_image(a_path), b = load_image(b_path);
      const MetricReport r = evaluate(a, b);
      if (as_json) {
        json j;
        j["psnr"] = r.psnr_infinite() ? json(nullptr) : json(r.psnr);
        j["psnr_infinite"] = r.psnr_infinite();
        j["ssim"] = r.ssim;
        j["delta_e"] = r.delta_e;
        j["lpips"] = nullptr;
        out << j.dump(2) << "\n";
      } else {
        out << "PSNR    " << (r.psnr_infinite() ? std::string("inf") : fmt_ms(r.psnr)) << " dB\n"
            << "SSIM    " << r.ssim << "\n"
            << "DeltaE  " << r.delta_e << "\n";
      }
    } else if (bn->parsed()) {
      const PipelineConfig cfg = config_path.empty() ? PipelineConfig{} : config_from_json(read_json(config_path));
      std::vector<BenchSize> list;
      std::stringstream ss(sizes);
      for (std::string tok; std::getline(ss, tok, ',');) {
        if (!tok.empty()) list.push_back(parse_bench_size(tok));
      }
      if (list.empty()) throw CliError("no sizes given");
      const BenchReport report = bench(cfg, list, reps, seed);
      if (as_json) {
        json j;
        j["threads"] = report.threads;
        j["repetitions"] = report.repetitions;
        j["seed"] = report.seed;
        json entries = json::array();
        for (const BenchEntry& e : report.entries) {
          entries.push_back({{"label", e.size.label},
                             {"height", e.size.height},
                             {"width", e.size.width},
                             {"pixels", e.size.pixels()},
                             {"levels", e.levels},
                             {"lut_apply", summary_json(e.lut_apply)},
                             {"decompose", summary_json(e.decompose)},
                             {"refine", summary_json(e.refine)},
                             {"reconstruct", summary_json(e.reconstruct)},
                             {"total", summary_json(e.total)}});
        }
        j["entries"] = entries;
        out << j.dump(2) << "\n";
      } else {
        out << "threads " << report.threads << ", reps " << report.repetitions << ", seed " << report.seed << "\n";
        out << std::left << std::setw(10) << "size" << std::setw(12) << "pixels" << std::setw(8) << "levels"
            << std::setw(10) << "lut" << std::setw(11) << "decompose" << std::setw(10) << "refine" << std::setw(13)
            << "reconstruct" << std::setw(12) << "total(med)" << "total(p95)\n";
        for (const BenchEntry& e : report.entries) {
          out << std::left << std::setw(10) << e.size.label << std::setw(12) << e.size.pixels() << std::setw(8)
              << e.levels << std::setw(10) << fmt_ms(e.lut_apply.median) << std::setw(11)
              << fmt_ms(e.decompose.median) << std::setw(10) << fmt_ms(e.refine.median) << std::setw(13)
              << fmt_ms(e.reconstruct.median) << std::setw(12) << fmt_ms(e.total.median) << fmt_ms(e.total.p95)
              << "\n";
        }
      }
    } else if (exp->parsed()) {
      const Image img = to_working_space(load_image(in_path), input_space);
      const EnhanceSetup s = setup_enhance(img, bundle_path, config_path);
      fs::create_directories(out_dir);
      json levels_json = json::array();
      EnhanceHooks hooks;
      hooks.on_conditioning = [&](const ConditioningStack& st) {
        std::ostringstream name;
        name << "conditioning_" << std::setw(2) << std::setfill('0') << st.level << ".tif";
        save_image(st.stack, fs::path(out_dir) / name.str(), FileKind::TiffFloat);
        json layout = json::array();
        for (const ChannelRole& r : st.layout) layout.push_back({{"role", r.name}, {"channels", r.channels}});
        levels_json.push_back({{"level", st.level},
                               {"file", name.str()},
                               {"height", st.stack.height()},
                               {"width", st.stack.width()},
                               {"channels", st.stack.channels()},
                               {"layout", layout}});
      };
      (void)enhance(img, s.params, s.cfg, hooks);
      write_json({{"gaussian_channels", s.params.gaussian_conditioning}, {"levels", levels_json}},
                 fs::path(out_dir) / "conditioning.json");
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace llflut::cli
