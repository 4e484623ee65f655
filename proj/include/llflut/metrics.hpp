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

#include <limits>
#include <optional>

#include "llflut/image.hpp"

namespace llflut {

inline constexpr double kPsnrIdentical = std::numeric_limits<double>::infinity();

// 10 log10(1 / MSE) over all samples, peak 1. Identical inputs give
// kPsnrIdentical.
double psnr(const Image& a, const Image& b);

// Mean SSIM with an 11x11 Gaussian window (sigma 1.5), C1 = 0.01^2,
// C2 = 0.03^2, data range 1, population statistics. Local statistics use
// mirror ("reflect") padding and the 5-pixel border is excluded from the mean;
// channels are averaged. Both sides must be at least 11 pixels.
double ssim(const Image& a, const Image& b);

// Mean CIE76 distance between per-pixel Lab values. Inputs are RGB tagged
// SRGB or LinearRGB.
double delta_e(const Image& a, const Image& b);

struct MetricReport {
  double psnr = 0.0;
  double ssim = 0.0;
  double delta_e = 0.0;
  // No in-engine implementation; kept so reports from other tools can be merged.
  std::optional<double> lpips;

  bool psnr_infinite() const { return psnr == kPsnrIdentical; }
};

MetricReport evaluate(const Image& a, const Image& b);

}  // namespace llflut
