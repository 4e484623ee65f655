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

#include "llflut/image.hpp"

namespace llflut {

struct CannyParams {
  double blur_sigma = 1.0;
  // Fractions of the largest gradient magnitude in the image.
  double low_thresh = 0.1;
  double high_thresh = 0.2;
};

// Binary (0/1) single-channel edge mask with the source dimensions.
//
// Steps: Rec. 709 luminance for 3-channel input, Gaussian blur with
// 2*ceil(3*sigma)+1 taps, Sobel gradients, non-maximum suppression along the
// gradient direction quantised to 0/45/90/135 degrees, double threshold, and
// hysteresis over 8-connected neighbours. Borders are edge-clamped. An image
// without any gradient yields an all-zero map.
Image canny(const Image& img, const CannyParams& params = {});

}  // namespace llflut
