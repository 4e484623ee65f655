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

#include "llflut/llf.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "llflut/parallel.hpp"

namespace llflut {

const LevelParams& ParamMapSet::for_level(int k, int depth) const {
  if (levels.empty()) return uniform;
  if (static_cast<int>(levels.size()) != depth) {
    throw InvalidArgument("ParamMapSet: parameters cover " + std::to_string(levels.size()) +
                          " levels but the pyramid has " + std::to_string(depth));
  }
  return levels.at(k);
}

bool ParamMapSet::all_constant() const {
  return std::all_of(levels.begin(), levels.end(),
                     [](const LevelParams& p) { return std::holds_alternative<ConstantParams>(p); });
}

float remap_offset(float d, float alpha, float beta, float sigma_r) {
  const float a = std::abs(d);
  float mag;
  if (a <= sigma_r) {
    mag = alpha == 1.0f ? a : sigma_r * std::pow(a / sigma_r, alpha);
  } else {
    mag = beta == 1.0f ? a : beta * (a - sigma_r) + sigma_r;
  }
  return d < 0.0f ? -mag : mag;
}

float remap(float i, float g, float alpha, float beta, float sigma_r) {
  if (alpha == 1.0f && beta == 1.0f) return i;
  return g + remap_offset(i - g, alpha, beta, sigma_r);
}

namespace {

void check_sigma(float sigma_r) {
  if (!(sigma_r > 0.0f)) throw InvalidArgument("sigma_r must be positive");
}

void check_constant(const ConstantParams& p) {
  if (!(p.alpha > 0.0f)) throw InvalidArgument("alpha must be positive");
  if (!(p.beta >= 0.0f)) throw InvalidArgument("beta must be non-negative");
}

std::string dims(const Image& img) {
  return std::to_string(img.height()) + "x" + std::to_string(img.width());
}

// Single-coefficient evaluation of upsample2(coarse, out_h, out_w) at (oy, ox),
// with the same operation order as the full-image pass.
float upsample_at(const Image& coarse, int c, int oy, int ox) {
  constexpr float e_side = 2 * kPyramidKernel[0];
  constexpr float e_mid = 2 * kPyramidKernel[2];
  constexpr float o_side = 2 * kPyramidKernel[1];
  const int last_x = coarse.width() - 1, last_y = coarse.height() - 1;
  auto horiz = [&](int row) {
    const float* src = coarse.row(c, row);
    const int i = ox >> 1;
    if ((ox & 1) == 0) return e_side * (src[std::max(i - 1, 0)] + src[std::min(i + 1, last_x)]) + e_mid * src[i];
    return o_side * (src[i] + src[std::min(i + 1, last_x)]);
  };
  const int i = oy >> 1;
  const float rm = horiz(i);
  const float rn = horiz(std::min(i + 1, last_y));
  if ((oy & 1) == 0) return e_side * (horiz(std::max(i - 1, 0)) + rn) + e_mid * rm;
  return o_side * (rm + rn);
}

Image remap_image(const Image& img, float g, float alpha, float beta, float sigma_r) {
  Image out(img.height(), img.width(), img.channels(), img.space());
  const auto src = img.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = remap(src[i], g, alpha, beta, sigma_r);
  return out;
}

}  // namespace

Image refine_level(const Image& band, const Image& gauss, const Image& alpha_map, const Image& beta_map,
                   float sigma_r) {
  check_sigma(sigma_r);
  if (!band.same_shape(gauss)) {
    throw InvalidArgument("refine_level: band is " + dims(band) + " but the Gaussian level is " + dims(gauss));
  }
  for (const Image* m : {&alpha_map, &beta_map}) {
    if (!m->same_dims(band) || (m->channels() != 1 && m->channels() != band.channels())) {
      throw InvalidArgument("refine_level: parameter map " + dims(*m) + "x" + std::to_string(m->channels()) +
                            " does not match band " + dims(band));
    }
  }
  Image out(band.height(), band.width(), band.channels(), band.space());
  const int w = band.width();
  const int rows = band.channels() * band.height();
  parallel_for(0, rows, [&](int r) {
    const int c = r / band.height();
    const int y = r % band.height();
    const float* l = band.row(c, y);
    const float* a = alpha_map.row(alpha_map.channels() == 1 ? 0 : c, y);
    const float* b = beta_map.row(beta_map.channels() == 1 ? 0 : c, y);
    float* dst = out.row(c, y);
    for (int x = 0; x < w; ++x) dst[x] = remap_offset(l[x], a[x], b[x], sigma_r);
  });
  return out;
}

Image refine_level(const Image& band, const Image& gauss, const LevelParams& params, float sigma_r) {
  if (const auto* maps = std::get_if<ParamMaps>(&params)) {
    return refine_level(band, gauss, maps->alpha, maps->beta, sigma_r);
  }
  const auto& p = std::get<ConstantParams>(params);
  check_constant(p);
  check_sigma(sigma_r);
  if (!band.same_shape(gauss)) {
    throw InvalidArgument("refine_level: band is " + dims(band) + " but the Gaussian level is " + dims(gauss));
  }
  Image out = band;
  if (p.alpha == 1.0f && p.beta == 1.0f) return out;
  for (float& v : out.data()) v = remap_offset(v, p.alpha, p.beta, sigma_r);
  return out;
}

Image direct_llf(const Image& img, float alpha, float beta, float sigma_r, int n) {
  check_sigma(sigma_r);
  check_constant({alpha, beta});
  const GaussianPyramid gauss = gaussian_pyramid(img, n);
  LaplacianPyramid out;
  out.residual = gauss.levels[n];
  for (int k = 0; k < n; ++k) {
    const Image& ref = gauss.levels[k];
    out.bands.emplace_back(ref.height(), ref.width(), ref.channels(), ref.space());
  }

  for (int c = 0; c < img.channels(); ++c) {
    const Image plane = img.channel(c);
    for (int k = 0; k < n; ++k) {
      const Image& ref = gauss.levels[k];
      Image& band = out.bands[k];
      parallel_for(0, ref.height(), [&](int y) {
        for (int x = 0; x < ref.width(); ++x) {
          const float g = ref.at(c, y, x);
          // Gaussian levels 0..k+1 of the image remapped around g.
          Image fine = remap_image(plane, g, alpha, beta, sigma_r);
          for (int j = 0; j < k; ++j) fine = downsample2(fine);
          const Image coarse = downsample2(fine);
          band.at(c, y, x) = fine.at(0, y, x) - upsample_at(coarse, 0, y, x);
        }
      });
    }
  }
  return laplacian_reconstruct(out);
}

LaplacianPyramid fast_llf_bands(const GaussianPyramid& gauss, const ParamMapSet& params, float sigma_r,
                                int samples) {
  check_sigma(sigma_r);
  if (samples < 2) throw InvalidArgument("fast_llf: need at least 2 samples, got " + std::to_string(samples));
  const int n = gauss.depth();
  if (n < 1) throw InvalidArgument("fast_llf: pyramid has no levels");
  const Image& img = gauss.levels[0];

  // Levels sharing a parameter pair share the sampled pyramids.
  std::map<std::pair<float, float>, std::vector<int>> groups;
  for (int k = 0; k < n; ++k) {
    const auto* p = std::get_if<ConstantParams>(&params.for_level(k, n));
    if (!p) throw InvalidArgument("fast_llf: per-pixel parameter maps are not supported, use constant parameters");
    check_constant(*p);
    groups[{p->alpha, p->beta}].push_back(k);
  }

  LaplacianPyramid out;
  out.residual = gauss.levels[n];
  for (int k = 0; k < n; ++k) {
    const Image& ref = gauss.levels[k];
    out.bands.emplace_back(ref.height(), ref.width(), ref.channels(), ref.space(), 0.0f);
  }

  const float last = static_cast<float>(samples - 1);
  for (const auto& [ab, levels] : groups) {
    const int deepest = *std::max_element(levels.begin(), levels.end());
    for (int j = 0; j < samples; ++j) {
      const float g = static_cast<float>(j) / last;
      const Image remapped = remap_image(img, g, ab.first, ab.second, sigma_r);
      const LaplacianPyramid sampled = laplacian_decompose(remapped, deepest + 1);
      for (int k : levels) {
        const Image& ref = gauss.levels[k];
        const Image& src = sampled.bands[k];
        Image& dst = out.bands[k];
        const int rows = ref.channels() * ref.height();
        parallel_for(0, rows, [&](int r) {
          const int c = r / ref.height();
          const int y = r % ref.height();
          const float* gr = ref.row(c, y);
          const float* s = src.row(c, y);
          float* d = dst.row(c, y);
          for (int x = 0; x < ref.width(); ++x) {
            // Hat weight of sample j at the reference position; values
            // outside [0,1] take the end samples.
            const float t = std::clamp(gr[x], 0.0f, 1.0f) * last;
            const float wgt = 1.0f - std::abs(t - static_cast<float>(j));
            if (wgt > 0.0f) d[x] += wgt * s[x];
          }
        });
      }
    }
  }
  return out;
}

Image fast_llf(const Image& img, float alpha, float beta, float sigma_r, int n, int samples) {
  if (samples < 2) throw InvalidArgument("fast_llf: need at least 2 samples, got " + std::to_string(samples));
  ParamMapSet params;
  params.uniform = ConstantParams{alpha, beta};
  return laplacian_reconstruct(fast_llf_bands(gaussian_pyramid(img, n), params, sigma_r, samples));
}

double objective_eval(const Image& output, const Image& reference) {
  if (!output.same_shape(reference)) {
    throw InvalidArgument("objective_eval: shape mismatch " + dims(output) + " vs " + dims(reference));
  }
  const auto a = output.data();
  const auto b = reference.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(static_cast<double>(a[i]) - b[i]);
  return sum / static_cast<double>(a.size());
}

}  // namespace llflut
