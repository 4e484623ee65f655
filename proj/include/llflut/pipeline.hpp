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

#pragma once

#include <functional>
#include <span>
#include <string>

#include "llflut/edge.hpp"
#include "llflut/image.hpp"
#include "llflut/llf.hpp"
#include "llflut/lut3d.hpp"
#include "llflut/params.hpp"

namespace llflut {

enum class LlfMode { Pointwise, Fast };

struct PipelineConfig {
  int target_low_res = 64;
  int lut_bins = kDefaultLutBins;
  int basis_count = kDefaultBasisLuts;
  float sigma_r = kDefaultSigmaR;
  LlfMode llf_mode = LlfMode::Pointwise;
  int fast_samples = kDefaultFastSamples;
  CannyParams edge;

  void validate() const;
};

// Stage wall times of one enhance call, milliseconds.
struct StageTimings {
  double lut_apply = 0.0;
  double decompose = 0.0;
  double refine = 0.0;
  double reconstruct = 0.0;
  double total = 0.0;
};

// Error raised by enhance; wraps the failing sub-step.
class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, const std::string& what)
      : std::runtime_error("enhance [" + stage + "]: " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Optional observers for a single enhance call.
struct EnhanceHooks {
  // Receives the predictor input of every refined level, coarsest first. When
  // unset no conditioning tensors (or edge maps) are built.
  std::function<void(const ConditioningStack&)> on_conditioning;
  // Receives the weight-map-fused low-resolution image.
  std::function<void(const Image&)> on_refined_lr;
  StageTimings* timings = nullptr;
};

// Weight-point fusion of the full-resolution image: the basis LUTs are fused
// into one lattice, then applied once.
Image coarse_global(const Image& img, std::span<const Lut3D> luts, const WeightPoints& w);

// Weight-map fusion of the low-resolution image.
Image coarse_lr(const Image& lr, std::span<const Lut3D> luts, const WeightMaps& maps);

// Full enhancement. The input is clamped to [0,1]; the low-resolution image is
// the coarsest Gaussian level of the input; the Laplacian pyramid of the
// globally adjusted image has its bands refined and its residual replaced by
// the weight-map-fused low-resolution image before reconstruction. The output
// is clamped once at the end and has the input's dimensions.
Image enhance(const Image& img, const EnhancementParams& params, const PipelineConfig& cfg = {},
              const EnhanceHooks& hooks = {});

}  // namespace llflut
