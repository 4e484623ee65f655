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
#include <vector>

#include "llflut/image.hpp"

namespace llflut {

// Burt-Adelson 5-tap binomial kernel.
inline constexpr std::array<float, 5> kPyramidKernel = {1.0f / 16, 4.0f / 16, 6.0f / 16, 4.0f / 16,
                                                        1.0f / 16};

// Smallest n such that ceil-halving max(h, w) n times lands at or below
// `target`, with a floor of one level for any image that can still be halved.
// Returns 0 only when the image is already 1x1.
int adaptive_levels(int h, int w, int target = 64);

// Deepest decomposition an h x w image supports: halvings until both sides are 1.
int max_levels(int h, int w);

// Blur with the binomial kernel (edge-clamped) and keep even samples.
// Output is ceil(h/2) x ceil(w/2).
Image downsample2(const Image& img);

// Inverse of downsample2's decimation: zero-insertion up to out_h x out_w and
// a blur with the kernel scaled by 2. The coarse grid is edge-clamped before
// insertion, so constants are preserved at the borders. Each target side must
// be 2s - 1 or 2s for source side s.
Image upsample2(const Image& img, int out_h, int out_w);

struct GaussianPyramid {
  std::vector<Image> levels;  // levels[0] is full resolution

  int depth() const { return static_cast<int>(levels.size()) - 1; }
};

struct LaplacianPyramid {
  std::vector<Image> bands;  // signed, finest first
  Image residual;

  int depth() const { return static_cast<int>(bands.size()); }
};

GaussianPyramid gaussian_pyramid(const Image& img, int n);

LaplacianPyramid laplacian_decompose(const Image& img, int n);

// Decomposes from a precomputed Gaussian pyramid; reuses its levels.
LaplacianPyramid laplacian_from_gaussian(const GaussianPyramid& gauss);

Image laplacian_reconstruct(const LaplacianPyramid& pyr);

}  // namespace llflut
