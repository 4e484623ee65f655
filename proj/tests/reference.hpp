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

// Straight-line double-precision reference implementations used as test
// oracles. Nothing here calls into the library except to read and write Image.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "llflut/image.hpp"
#include "llflut/lut3d.hpp"

namespace ref {

struct Plane {
  int h = 0, w = 0;
  std::vector<double> v;

  Plane() = default;
  Plane(int h_, int w_, double fill = 0.0) : h(h_), w(w_), v(static_cast<std::size_t>(h_) * w_, fill) {}
  double& operator()(int y, int x) { return v[static_cast<std::size_t>(y) * w + x]; }
  double operator()(int y, int x) const { return v[static_cast<std::size_t>(y) * w + x]; }
  double clamped(int y, int x) const { return (*this)(std::clamp(y, 0, h - 1), std::clamp(x, 0, w - 1)); }
};

inline Plane plane_of(const llflut::Image& img, int c) {
  Plane p(img.height(), img.width());
  for (int y = 0; y < p.h; ++y)
    for (int x = 0; x < p.w; ++x) p(y, x) = img.at(c, y, x);
  return p;
}

inline std::vector<Plane> planes_of(const llflut::Image& img) {
  std::vector<Plane> out;
  for (int c = 0; c < img.channels(); ++c) out.push_back(plane_of(img, c));
  return out;
}

inline double max_diff(const Plane& p, const llflut::Image& img, int c) {
  double m = 0.0;
  for (int y = 0; y < p.h; ++y)
    for (int x = 0; x < p.w; ++x) m = std::max(m, std::abs(p(y, x) - img.at(c, y, x)));
  return m;
}

inline double max_diff(const std::vector<Plane>& ps, const llflut::Image& img) {
  double m = 0.0;
  for (int c = 0; c < static_cast<int>(ps.size()); ++c) m = std::max(m, max_diff(ps[c], img, c));
  return m;
}

inline constexpr std::array<double, 5> kKernel = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};

// Full 5x5 outer-product convolution at even positions, edge-clamped.
inline Plane down(const Plane& p) {
  Plane out((p.h + 1) / 2, (p.w + 1) / 2);
  for (int oy = 0; oy < out.h; ++oy)
    for (int ox = 0; ox < out.w; ++ox) {
      double s = 0.0;
      for (int dy = 0; dy < 5; ++dy)
        for (int dx = 0; dx < 5; ++dx) s += kKernel[dy] * kKernel[dx] * p.clamped(2 * oy + dy - 2, 2 * ox + dx - 2);
      out(oy, ox) = s;
    }
  return out;
}

// Coarse sample i sits at fine position 2i; coarse indices outside the grid
// take the nearest edge value. Each fine sample is 4 * sum of kernel-weighted
// coarse samples within reach.
inline Plane up(const Plane& p, int oh, int ow) {
  Plane out(oh, ow);
  for (int y = 0; y < oh; ++y)
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int i = -2; i <= (oh + 2) / 2 + 1; ++i) {
        const int ky = y - 2 * i + 2;
        if (ky < 0 || ky > 4) continue;
        for (int j = -2; j <= (ow + 2) / 2 + 1; ++j) {
          const int kx = x - 2 * j + 2;
          if (kx < 0 || kx > 4) continue;
          s += 4.0 * kKernel[ky] * kKernel[kx] * p.clamped(i, j);
        }
      }
      out(y, x) = s;
    }
  return out;
}

inline std::vector<Plane> gauss(const Plane& p, int n) {
  std::vector<Plane> g{p};
  for (int k = 0; k < n; ++k) g.push_back(down(g.back()));
  return g;
}

// Bands followed by the residual.
inline std::vector<Plane> laplacian(const Plane& p, int n) {
  const std::vector<Plane> g = gauss(p, n);
  std::vector<Plane> out;
  for (int k = 0; k < n; ++k) {
    Plane b = up(g[k + 1], g[k].h, g[k].w);
    for (std::size_t i = 0; i < b.v.size(); ++i) b.v[i] = g[k].v[i] - b.v[i];
    out.push_back(b);
  }
  out.push_back(g[n]);
  return out;
}

inline Plane collapse(const std::vector<Plane>& pyr) {
  Plane x = pyr.back();
  for (int k = static_cast<int>(pyr.size()) - 2; k >= 0; --k) {
    x = up(x, pyr[k].h, pyr[k].w);
    for (std::size_t i = 0; i < x.v.size(); ++i) x.v[i] += pyr[k].v[i];
  }
  return x;
}

inline double remap(double i, double g, double alpha, double beta, double sigma) {
  const double d = i - g;
  const double a = std::abs(d);
  const double s = d > 0 ? 1.0 : (d < 0 ? -1.0 : 0.0);
  if (a <= sigma) return g + s * sigma * std::pow(a / sigma, alpha);
  return g + s * (beta * (a - sigma) + sigma);
}

// Blends the eight lattice corners around (r, g, b) by their box weights.
inline std::array<double, 3> trilinear(const llflut::Lut3D& lut, double r, double g, double b) {
  const int n = lut.n_bins();
  const double pos[3] = {std::clamp(r, 0.0, 1.0) * (n - 1), std::clamp(g, 0.0, 1.0) * (n - 1),
                         std::clamp(b, 0.0, 1.0) * (n - 1)};
  int base[3];
  for (int a = 0; a < 3; ++a) base[a] = std::min(static_cast<int>(std::floor(pos[a])), n - 2);
  std::array<double, 3> out{};
  for (int corner = 0; corner < 8; ++corner) {
    const int idx[3] = {base[0] + (corner & 1), base[1] + ((corner >> 1) & 1), base[2] + ((corner >> 2) & 1)};
    double weight = 1.0;
    for (int a = 0; a < 3; ++a) weight *= 1.0 - std::abs(pos[a] - idx[a]);
    for (int c = 0; c < 3; ++c) out[c] += weight * lut.at(idx[0], idx[1], idx[2], c);
  }
  return out;
}

inline double srgb_to_linear(double v) {
  return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

// CIE 1976 L*a*b* of a linear sRGB triple, D65.
inline std::array<double, 3> lab_of_linear(double r, double g, double b) {
  const double X = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
  const double Y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
  const double Z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
  auto f = [](double t) {
    const double e = 216.0 / 24389.0, k = 24389.0 / 27.0;
    return t > e ? std::cbrt(t) : (k * t + 16.0) / 116.0;
  };
  const double fx = f(X / 0.95047), fy = f(Y / 1.0), fz = f(Z / 1.08883);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

// Local Laplacian filter by definition: each coefficient of each level comes
// from the pyramid of the whole plane remapped around that coefficient's
// Gaussian value.
inline Plane llf(const Plane& p, double alpha, double beta, double sigma, int n) {
  const std::vector<Plane> g = gauss(p, n);
  std::vector<Plane> out;
  for (int k = 0; k < n; ++k) {
    Plane band(g[k].h, g[k].w);
    for (int y = 0; y < band.h; ++y)
      for (int x = 0; x < band.w; ++x) {
        Plane r(p.h, p.w);
        for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] = remap(p.v[i], g[k](y, x), alpha, beta, sigma);
        const std::vector<Plane> lap = laplacian(r, k + 1);
        band(y, x) = lap[k](y, x);
      }
    out.push_back(band);
  }
  out.push_back(g[n]);
  return collapse(out);
}

inline llflut::Image random_image(int h, int w, int c, std::uint64_t seed,
                                  llflut::ColorSpace space = llflut::ColorSpace::SRGB) {
  llflut::Image img(h, w, c, space);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> dist(0.0f, 1.0f);
  for (float& v : img.data()) v = dist(rng);
  return img;
}

inline llflut::Lut3D random_lut(int n_bins, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> dist(0.0f, 1.0f);
  std::vector<float> e(static_cast<std::size_t>(n_bins) * n_bins * n_bins * 3);
  for (float& v : e) v = dist(rng);
  return llflut::Lut3D(n_bins, std::move(e));
}

}  // namespace ref
