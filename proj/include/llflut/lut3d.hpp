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

#include <array>
#include <span>
#include <vector>

#include "llflut/image.hpp"

namespace llflut {

inline constexpr int kDefaultLutBins = 33;
inline constexpr int kDefaultBasisLuts = 3;

// RGB lattice over the unit cube. Node (r, g, b) stores an output triple; red
// varies fastest in storage, which is also the `.cube` line order.
class Lut3D {
 public:
  Lut3D() = default;
  // Zero-filled lattice.
  explicit Lut3D(int n_bins);
  Lut3D(int n_bins, std::vector<float> entries);

  int n_bins() const { return n_bins_; }
  std::size_t node_count() const { return entries_.size() / 3; }

  std::size_t node_index(int r, int g, int b) const {
    return (static_cast<std::size_t>(b) * n_bins_ + g) * n_bins_ + r;
  }
  float& at(int r, int g, int b, int c) { return entries_[node_index(r, g, b) * 3 + c]; }
  float at(int r, int g, int b, int c) const { return entries_[node_index(r, g, b) * 3 + c]; }

  std::span<float> entries() { return entries_; }
  std::span<const float> entries() const { return entries_; }

  friend bool operator==(const Lut3D&, const Lut3D&) = default;

 private:
  int n_bins_ = 0;
  std::vector<float> entries_;
};

// One scalar per basis LUT; unnormalised, may be negative.
struct WeightPoints {
  std::vector<float> weights;

  std::size_t size() const { return weights.size(); }
  friend bool operator==(const WeightPoints&, const WeightPoints&) = default;
};

// One single-channel map per basis LUT, all of the same size.
struct WeightMaps {
  std::vector<Image> maps;

  std::size_t size() const { return maps.size(); }
  int height() const { return maps.empty() ? 0 : maps.front().height(); }
  int width() const { return maps.empty() ? 0 : maps.front().width(); }
  friend bool operator==(const WeightMaps&, const WeightMaps&) = default;

  // Throws unless non-empty, single-channel, equally sized and finite.
  void validate() const;
  static WeightMaps uniform(int height, int width, std::span<const float> weights);
};

Lut3D identity_lut(int n_bins = kDefaultLutBins);

// Trilinear lookup of one colour; inputs are clamped to [0,1].
std::array<float, 3> lookup(const Lut3D& lut, float r, float g, float b);

Image apply_trilinear(const Lut3D& lut, const Image& img);

// Entrywise weighted sum of the basis LUTs.
Lut3D fuse_luts_points(std::span<const Lut3D> luts, const WeightPoints& w);

// Pixel-level fusion: each LUT is interpolated independently and the results
// are blended with the per-pixel weights of the matching map.
Image apply_fused_maps(std::span<const Lut3D> luts, const WeightMaps& maps, const Image& img);

// Sum of squared differences between adjacent nodes along each lattice axis.
double smoothness_penalty(const Lut3D& lut);
// Sum of squared decreases between adjacent nodes along each lattice axis.
double monotonicity_penalty(const Lut3D& lut);

}  // namespace llflut
