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

#include "llflut/pyramid.hpp"

#include <algorithm>
#include <string>

#include "llflut/parallel.hpp"

namespace llflut {
namespace {

constexpr float k0 = kPyramidKernel[0];
constexpr float k1 = kPyramidKernel[1];
constexpr float k2 = kPyramidKernel[2];

int half_up(int s) { return (s + 1) / 2; }

std::string dims(int h, int w) { return std::to_string(h) + "x" + std::to_string(w); }

}  // namespace

int adaptive_levels(int h, int w, int target) {
  if (h < 1 || w < 1 || target < 1) throw InvalidArgument("adaptive_levels: sizes must be positive");
  int side = std::max(h, w);
  if (side <= target) return side >= 2 ? 1 : 0;
  int n = 0;
  while (side > target) {
    side = half_up(side);
    ++n;
  }
  return n;
}

int max_levels(int h, int w) {
  int side = std::max(h, w);
  int n = 0;
  while (side > 1) {
    side = half_up(side);
    ++n;
  }
  return n;
}

Image downsample2(const Image& img) {
  const int h = img.height(), w = img.width();
  const int oh = half_up(h), ow = half_up(w);
  Image out(oh, ow, img.channels(), img.space());
  const int last_x = w - 1, last_y = h - 1;

  for (int c = 0; c < img.channels(); ++c) {
    // Horizontal pass evaluated only at even columns.
    std::vector<float> tmp(static_cast<std::size_t>(h) * ow);
    parallel_for(0, h, [&](int y) {
      const float* src = img.row(c, y);
      float* dst = tmp.data() + static_cast<std::size_t>(y) * ow;
      for (int ox = 0; ox < ow; ++ox) {
        const int x = 2 * ox;
        const float a = src[std::max(x - 2, 0)];
        const float b = src[std::max(x - 1, 0)];
        const float m = src[x];
        const float d = src[std::min(x + 1, last_x)];
        const float e = src[std::min(x + 2, last_x)];
        dst[ox] = k0 * (a + e) + k1 * (b + d) + k2 * m;
      }
    });
    parallel_for(0, oh, [&](int oy) {
      const int y = 2 * oy;
      const float* ra = tmp.data() + static_cast<std::size_t>(std::max(y - 2, 0)) * ow;
      const float* rb = tmp.data() + static_cast<std::size_t>(std::max(y - 1, 0)) * ow;
      const float* rm = tmp.data() + static_cast<std::size_t>(y) * ow;
      const float* rd = tmp.data() + static_cast<std::size_t>(std::min(y + 1, last_y)) * ow;
      const float* re = tmp.data() + static_cast<std::size_t>(std::min(y + 2, last_y)) * ow;
      float* dst = out.row(c, oy);
      for (int x = 0; x < ow; ++x) dst[x] = k0 * (ra[x] + re[x]) + k1 * (rb[x] + rd[x]) + k2 * rm[x];
    });
  }
  return out;
}

Image upsample2(const Image& img, int out_h, int out_w) {
  const int h = img.height(), w = img.width();
  auto valid = [](int s, int t) { return t == 2 * s || t == 2 * s - 1; };
  if (!valid(h, out_h) || !valid(w, out_w)) {
    throw InvalidArgument("upsample2: cannot expand " + dims(h, w) + " to " + dims(out_h, out_w));
  }
  Image out(out_h, out_w, img.channels(), img.space());
  const int last_x = w - 1, last_y = h - 1;
  // Zero-inserted taps, kernel doubled: even outputs see (1,6,1)/8 of the
  // coarse neighbours, odd outputs see (1,1)/2.
  constexpr float e_side = 2 * k0;
  constexpr float e_mid = 2 * k2;
  constexpr float o_side = 2 * k1;

  for (int c = 0; c < img.channels(); ++c) {
    std::vector<float> tmp(static_cast<std::size_t>(h) * out_w);
    parallel_for(0, h, [&](int y) {
      const float* src = img.row(c, y);
      float* dst = tmp.data() + static_cast<std::size_t>(y) * out_w;
      for (int ox = 0; ox < out_w; ++ox) {
        const int i = ox >> 1;
        if ((ox & 1) == 0) {
          dst[ox] = e_side * (src[std::max(i - 1, 0)] + src[std::min(i + 1, last_x)]) + e_mid * src[i];
        } else {
          dst[ox] = o_side * (src[i] + src[std::min(i + 1, last_x)]);
        }
      }
    });
    parallel_for(0, out_h, [&](int oy) {
      const int i = oy >> 1;
      float* dst = out.row(c, oy);
      const float* rm = tmp.data() + static_cast<std::size_t>(i) * out_w;
      const float* rn = tmp.data() + static_cast<std::size_t>(std::min(i + 1, last_y)) * out_w;
      if ((oy & 1) == 0) {
        const float* rp = tmp.data() + static_cast<std::size_t>(std::max(i - 1, 0)) * out_w;
        for (int x = 0; x < out_w; ++x) dst[x] = e_side * (rp[x] + rn[x]) + e_mid * rm[x];
      } else {
        for (int x = 0; x < out_w; ++x) dst[x] = o_side * (rm[x] + rn[x]);
      }
    });
  }
  return out;
}

GaussianPyramid gaussian_pyramid(const Image& img, int n) {
  if (img.empty()) throw InvalidArgument("gaussian_pyramid: empty image");
  if (n < 1) throw InvalidArgument("gaussian_pyramid: level count must be >= 1, got " + std::to_string(n));
  const int limit = max_levels(img.height(), img.width());
  if (n > limit) {
    throw InvalidArgument("gaussian_pyramid: " + std::to_string(n) + " levels requested but a " +
                          dims(img.height(), img.width()) + " image supports at most " +
                          std::to_string(limit));
  }
  GaussianPyramid pyr;
  pyr.levels.reserve(n + 1);
  pyr.levels.push_back(img);
  for (int k = 0; k < n; ++k) pyr.levels.push_back(downsample2(pyr.levels.back()));
  return pyr;
}

LaplacianPyramid laplacian_from_gaussian(const GaussianPyramid& gauss) {
  const int n = gauss.depth();
  if (n < 1) throw InvalidArgument("laplacian_from_gaussian: pyramid has no levels to decompose");
  LaplacianPyramid pyr;
  pyr.bands.reserve(n);
  for (int k = 0; k < n; ++k) {
    const Image& fine = gauss.levels[k];
    Image band = upsample2(gauss.levels[k + 1], fine.height(), fine.width());
    const auto src = fine.data();
    auto dst = band.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[i] - dst[i];
    pyr.bands.push_back(std::move(band));
  }
  pyr.residual = gauss.levels[n];
  return pyr;
}

LaplacianPyramid laplacian_decompose(const Image& img, int n) {
  return laplacian_from_gaussian(gaussian_pyramid(img, n));
}

Image laplacian_reconstruct(const LaplacianPyramid& pyr) {
  if (pyr.residual.empty()) throw InvalidArgument("laplacian_reconstruct: missing residual");
  Image x = pyr.residual;
  for (int k = pyr.depth() - 1; k >= 0; --k) {
    const Image& band = pyr.bands[k];
    if (band.channels() != x.channels()) {
      throw InvalidArgument("laplacian_reconstruct: channel mismatch at level " + std::to_string(k));
    }
    if (half_up(band.height()) != x.height() || half_up(band.width()) != x.width()) {
      throw InvalidArgument("laplacian_reconstruct: level " + std::to_string(k) + " is " +
                            dims(band.height(), band.width()) + " but the coarser level is " +
                            dims(x.height(), x.width()));
    }
    x = upsample2(x, band.height(), band.width());
    const auto src = band.data();
    auto dst = x.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  }
  return x;
}

}  // namespace llflut
