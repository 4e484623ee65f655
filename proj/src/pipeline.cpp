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

#include "llflut/pipeline.hpp"

#include <chrono>
#include <optional>

#include "llflut/pyramid.hpp"

namespace llflut {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <typename F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(name, e.what());
  }
}

}  // namespace

void PipelineConfig::validate() const {
  if (target_low_res < 8) throw InvalidArgument("config: target_low_res must be >= 8");
  if (lut_bins < 2) throw InvalidArgument("config: lut_bins must be >= 2");
  if (basis_count < 1) throw InvalidArgument("config: basis_count must be >= 1");
  if (!(sigma_r > 0.0f)) throw InvalidArgument("config: sigma_r must be positive");
  if (llf_mode == LlfMode::Fast && fast_samples < 2) throw InvalidArgument("config: fast_samples must be >= 2");
  if (!(edge.low_thresh > 0.0 && edge.low_thresh < edge.high_thresh && edge.high_thresh <= 1.0)) {
    throw InvalidArgument("config: edge thresholds must satisfy 0 < low < high <= 1");
  }
}

Image coarse_global(const Image& img, std::span<const Lut3D> luts, const WeightPoints& w) {
  return apply_trilinear(fuse_luts_points(luts, w), img);
}

Image coarse_lr(const Image& lr, std::span<const Lut3D> luts, const WeightMaps& maps) {
  return apply_fused_maps(luts, maps, lr);
}

Image enhance(const Image& img, const EnhancementParams& params, const PipelineConfig& cfg,
              const EnhanceHooks& hooks) {
  const auto t_start = Clock::now();
  stage("config", [&] {
    cfg.validate();
    params.validate();
    if (params.basis_count() != cfg.basis_count) {
      throw InvalidArgument("params carry " + std::to_string(params.basis_count()) + " basis LUTs, config expects " +
                            std::to_string(cfg.basis_count));
    }
    if (params.luts.front().n_bins() != cfg.lut_bins) {
      throw InvalidArgument("params LUTs have " + std::to_string(params.luts.front().n_bins()) +
                            " bins, config expects " + std::to_string(cfg.lut_bins));
    }
    return 0;
  });
  if (img.channels() != 3) throw PipelineError("input", "expected a 3-channel image");

  const Image input = clamp(img);
  const int n = adaptive_levels(input.height(), input.width(), cfg.target_low_res);
  StageTimings local;
  StageTimings& timings = hooks.timings ? *hooks.timings : local;
  timings = {};

  auto t0 = Clock::now();
  std::optional<GaussianPyramid> input_pyr;
  if (n > 0) input_pyr = stage("decompose", [&] { return gaussian_pyramid(input, n); });
  const Image& lr = n > 0 ? input_pyr->levels[n] : input;
  timings.decompose += ms_since(t0);

  if (params.weight_maps.height() != lr.height() || params.weight_maps.width() != lr.width()) {
    throw PipelineError("weights", "weight maps are " + std::to_string(params.weight_maps.height()) + "x" +
                                       std::to_string(params.weight_maps.width()) +
                                       " but the low-resolution level is " + std::to_string(lr.height()) + "x" +
                                       std::to_string(lr.width()));
  }

  t0 = Clock::now();
  const Image refined_lr = stage("lut", [&] { return coarse_lr(lr, params.luts, params.weight_maps); });
  if (hooks.on_refined_lr) hooks.on_refined_lr(refined_lr);
  if (n == 0) {
    timings.lut_apply = ms_since(t0);
    timings.total = ms_since(t_start);
    return clamp(refined_lr);
  }
  const Image global = stage("lut", [&] { return coarse_global(input, params.luts, params.weight_points); });
  timings.lut_apply = ms_since(t0);
  input_pyr.reset();

  t0 = Clock::now();
  const GaussianPyramid gauss = stage("decompose", [&] { return gaussian_pyramid(global, n); });
  LaplacianPyramid pyr = stage("decompose", [&] { return laplacian_from_gaussian(gauss); });
  timings.decompose += ms_since(t0);

  t0 = Clock::now();
  const bool want_conditioning = static_cast<bool>(hooks.on_conditioning);
  auto emit = [&](int k, const std::vector<Image>& refined) {
    if (!want_conditioning) return;
    stage("conditioning", [&] {
      if (k == n - 1) {
        const Image edges = canny(refined_lr, cfg.edge);
        hooks.on_conditioning(assemble_coarsest_conditioning(k, pyr.bands[k], pyr.residual, refined_lr, edges,
                                                             gauss.levels[k], params.gaussian_conditioning));
      } else {
        hooks.on_conditioning(assemble_interior_conditioning(k, pyr.bands[k], refined[k + 1], gauss.levels[k],
                                                             params.gaussian_conditioning));
      }
      return 0;
    });
  };

  std::vector<Image> refined(n);
  if (cfg.llf_mode == LlfMode::Pointwise) {
    for (int k = n - 1; k >= 0; --k) {
      emit(k, refined);
      refined[k] = stage("refine", [&] {
        return refine_level(pyr.bands[k], gauss.levels[k], params.param_maps.for_level(k, n), params.sigma_r);
      });
    }
  } else {
    LaplacianPyramid fast = stage("refine", [&] {
      return fast_llf_bands(gauss, params.param_maps, params.sigma_r, cfg.fast_samples);
    });
    refined = std::move(fast.bands);
    for (int k = n - 1; k >= 0; --k) emit(k, refined);
  }
  timings.refine = ms_since(t0);

  t0 = Clock::now();
  pyr.bands = std::move(refined);
  pyr.residual = refined_lr;
  Image out = stage("reconstruct", [&] { return clamp(laplacian_reconstruct(pyr)); });
  timings.reconstruct = ms_since(t0);
  timings.total = ms_since(t_start);
  return out;
}

}  // namespace llflut
