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

#include "llflut/image.hpp"

namespace llflut {

// D65 reference white, Y normalised to 1.
inline constexpr std::array<double, 3> kD65White = {0.95047, 1.0, 1.08883};

// IEC 61966-2-1 transfer functions on a single value.
double srgb_decode(double v);
double srgb_encode(double v);

// Per-sample sRGB transfer. Input must be tagged SRGB / LinearRGB respectively.
Image srgb_to_linear(const Image& img);
Image linear_to_srgb(const Image& img);

// sRGB primaries, D65.
Image xyz_to_linear_rgb(const Image& img);
Image linear_rgb_to_xyz(const Image& img);

Image xyz_to_lab(const Image& img);
Image lab_to_xyz(const Image& img);

// Accepts LinearRGB or SRGB (decoded first).
Image rgb_to_lab(const Image& img);

// Scalar helpers shared with metrics.
std::array<double, 3> linear_rgb_to_xyz(const std::array<double, 3>& rgb);
std::array<double, 3> xyz_to_lab(const std::array<double, 3>& xyz);

}  // namespace llflut
