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

#include <optional>
#include <variant>
#include <vector>

#include "llflut/image.hpp"
#include "llflut/pyramid.hpp"

namespace llflut {

inline constexpr float kDefaultSigmaR = 0.1f;
inline constexpr int kDefaultFastSamples = 16;

// Scalar detail/edge parameters of the remapping curve.
struct ConstantParams {
  float alpha = 1.0f;
  float beta = 1.0f;

  friend bool operator==(const ConstantParams&, const ConstantParams&) = default;
};

// Per-pixel alpha and beta for one pyramid level, at band resolution.
struct ParamMaps {
  Image alpha;
  Image beta;

  friend bool operator==(const ParamMaps&, const ParamMaps&) = default;
};

using LevelParams = std::variant<ConstantParams, ParamMaps>;

// Refinement parameters for every Laplacian band. Either one entry per level
// (index k refines band k) or, when `levels` is empty, `uniform` applies to
// all of them. `uniform` always holds ConstantParams.
struct ParamMapSet {
  std::vector<LevelParams> levels;
  LevelParams uniform = ConstantParams{};

  const LevelParams& for_level(int k, int depth) const;
  bool all_constant() const;
  friend bool operator==(const ParamMapSet&, const ParamMapSet&) = default;
};

// Local Laplacian remapping curve around reference g. Inside |i - g| <= sigma_r
// the offset is shaped by alpha (detail), outside it is scaled by beta (edge
// range). Total for sigma_r > 0.
float remap(float i, float g, float alpha, float beta, float sigma_r);

// remap(g + d, g, ...) - g, the curve expressed on the offset from the
// reference. Exact identity (bitwise) when alpha == beta == 1.
float remap_offset(float d, float alpha, float beta, float sigma_r);

// Pointwise refinement of a Laplacian band: each coefficient l with reference
// g becomes remap(g + l, g) - g. The reference cancels in this form, so `gauss`
// only has to agree with the band geometry.
Image refine_level(const Image& band, const Image& gauss, const LevelParams& params, float sigma_r);
Image refine_level(const Image& band, const Image& gauss, const Image& alpha_map, const Image& beta_map,
                   float sigma_r);

// Reference local Laplacian filter: every output coefficient (k, p) is the
// level-k coefficient at p of the pyramid of the image remapped around
// g = G_k(p). Channels are filtered independently. Quadratic cost; meant as an
// oracle on small images.
Image direct_llf(const Image& img, float alpha, float beta, float sigma_r, int n);

// Sampled approximation: remap against `samples` evenly spaced references in
// [0,1], decompose each, and interpolate per coefficient between the two
// pyramids that bracket G_k(p).
Image fast_llf(const Image& img, float alpha, float beta, float sigma_r, int n,
               int samples = kDefaultFastSamples);

// Band-level form of fast_llf with per-level constant parameters; the residual
// is the input's coarsest Gaussian level. `gauss` must be img's pyramid.
LaplacianPyramid fast_llf_bands(const GaussianPyramid& gauss, const ParamMapSet& params, float sigma_r,
                                int samples);

// Mean absolute error between two equally shaped images.
double objective_eval(const Image& output, const Image& reference);

}  // namespace llflut
