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

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "llflut/image.hpp"
#include "llflut/llf.hpp"
#include "llflut/lut3d.hpp"

namespace llflut {

// Everything a trained predictor supplies for one image: basis LUTs, their
// global weights (applied to the full-resolution image), per-pixel weight maps
// at the low-resolution level, and per-level refinement parameters.
struct EnhancementParams {
  std::vector<Lut3D> luts;
  WeightPoints weight_points;
  WeightMaps weight_maps;
  ParamMapSet param_maps;
  float sigma_r = kDefaultSigmaR;
  // Conditioning stacks include the Gaussian level channels.
  bool gaussian_conditioning = true;

  int basis_count() const { return static_cast<int>(luts.size()); }

  // Throws InvalidArgument naming the offending field.
  void validate() const;

  friend bool operator==(const EnhancementParams&, const EnhancementParams&) = default;
};

// The provable no-op configuration for a given low-resolution level: T
// identity LUTs, one-hot weights on LUT 0, alpha = beta = 1, sigma_r = 0.1.
EnhancementParams heuristic_params(const Image& lr, int basis_count = kDefaultBasisLuts,
                                   int n_bins = kDefaultLutBins);

// ---- LLFP1 bundle ----------------------------------------------------------
//
//   bytes 0..5   "LLFP1\n"
//   bytes 6..9   manifest length L, uint32 little-endian
//   next L bytes UTF-8 JSON manifest
//   remainder    float32 little-endian arrays in manifest "arrays" order
//
// Arrays: "luts" (T * n_bins^3 * 3, red fastest, RGB interleaved per node),
// "weight_points" (T), "weight_maps" (T * lr_height * lr_width, row-major per
// map), then for every map-valued level listed in "levels" (coarsest first)
// "alpha_<k>" and "beta_<k>" (height * width * channels each).

inline constexpr std::string_view kBundleMagic = "LLFP1\n";

class BundleError : public std::runtime_error {
 public:
  enum class Kind { Io, BadMagic, Truncated, Manifest, SizeMismatch, InvalidValue };

  BundleError(Kind kind, std::string field, const std::string& what)
      : std::runtime_error("bundle field '" + field + "': " + what), kind_(kind), field_(std::move(field)) {}

  Kind kind() const { return kind_; }
  const std::string& field() const { return field_; }

 private:
  Kind kind_;
  std::string field_;
};

std::vector<std::uint8_t> serialize_bundle(const EnhancementParams& params);
EnhancementParams deserialize_bundle(std::span<const std::uint8_t> bytes);

void save_bundle(const EnhancementParams& params, const std::filesystem::path& path);
EnhancementParams load_bundle(const std::filesystem::path& path);

// ---- Conditioning ----------------------------------------------------------

struct ChannelRole {
  std::string name;
  int channels;
};

// Channel-concatenated predictor input for one refinement level.
struct ConditioningStack {
  int level = 0;
  Image stack;
  std::vector<ChannelRole> layout;
};

// Coarsest refined level n-1: [band_{n-1}, up(residual), up(refined LR),
// up(edge(refined LR)), gauss_{n-1}] = 13 channels (10 without the Gaussian
// level). Coarser inputs are expanded with upsample2 to the band size.
ConditioningStack assemble_coarsest_conditioning(int level, const Image& band, const Image& residual,
                                                 const Image& refined_lr, const Image& edge_map,
                                                 const Image& gauss, bool include_gaussian = true);

// Interior levels n-2..0: [band_k, up(refined band_{k+1}), gauss_k] = 9
// channels (6 without the Gaussian level).
ConditioningStack assemble_interior_conditioning(int level, const Image& band, const Image& refined_coarser,
                                                 const Image& gauss, bool include_gaussian = true);

}  // namespace llflut
