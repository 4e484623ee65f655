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

#include "llflut/lut3d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "llflut/parallel.hpp"

namespace llflut {

Lut3D::Lut3D(int n_bins) : n_bins_(n_bins) {
  if (n_bins < 2) throw InvalidArgument("Lut3D: n_bins must be >= 2, got " + std::to_string(n_bins));
  entries_.assign(static_cast<std::size_t>(n_bins) * n_bins * n_bins * 3, 0.0f);
}

Lut3D::Lut3D(int n_bins, std::vector<float> entries) : Lut3D(n_bins) {
  if (entries.size() != entries_.size()) {
    throw InvalidArgument("Lut3D: expected " + std::to_string(entries_.size()) + " values, got " +
                          std::to_string(entries.size()));
  }
  for (float v : entries) {
    if (!std::isfinite(v)) throw InvalidArgument("Lut3D: non-finite entry");
  }
  entries_ = std::move(entries);
}

void WeightMaps::validate() const {
  if (maps.empty()) throw InvalidArgument("WeightMaps: no maps");
  for (const Image& m : maps) {
    if (m.channels() != 1) throw InvalidArgument("WeightMaps: maps must be single-channel");
    if (!m.same_dims(maps.front())) throw InvalidArgument("WeightMaps: maps differ in size");
    for (float v : m.data()) {
      if (!std::isfinite(v)) throw InvalidArgument("WeightMaps: non-finite weight");
    }
  }
}

WeightMaps WeightMaps::uniform(int height, int width, std::span<const float> weights) {
  WeightMaps out;
  for (float w : weights) out.maps.push_back(Image::constant(height, width, 1, ColorSpace::Gray, w));
  return out;
}

Lut3D identity_lut(int n_bins) {
  Lut3D lut(n_bins);
  const float step = 1.0f / static_cast<float>(n_bins - 1);
  for (int b = 0; b < n_bins; ++b) {
    for (int g = 0; g < n_bins; ++g) {
      for (int r = 0; r < n_bins; ++r) {
        lut.at(r, g, b, 0) = r == n_bins - 1 ? 1.0f : r * step;
        lut.at(r, g, b, 1) = g == n_bins - 1 ? 1.0f : g * step;
        lut.at(r, g, b, 2) = b == n_bins - 1 ? 1.0f : b * step;
      }
    }
  }
  return lut;
}

namespace {

struct Cell {
  std::size_t base;  // entry offset of the lower corner
  float fr, fg, fb;
};

struct Strides {
  std::size_t r, g, b;
};

Strides strides_of(const Lut3D& lut) {
  const std::size_t n = lut.n_bins();
  return {3, 3 * n, 3 * n * n};
}

inline void axis(float v, int n, int& i0, float& f) {
  const float pos = std::clamp(v, 0.0f, 1.0f) * static_cast<float>(n - 1);
  i0 = std::min(static_cast<int>(pos), n - 2);
  f = pos - static_cast<float>(i0);
}

inline Cell locate(const Lut3D& lut, float r, float g, float b) {
  int ir, ig, ib;
  Cell cell{};
  axis(r, lut.n_bins(), ir, cell.fr);
  axis(g, lut.n_bins(), ig, cell.fg);
  axis(b, lut.n_bins(), ib, cell.fb);
  cell.base = lut.node_index(ir, ig, ib) * 3;
  return cell;
}

inline float lerp(float a, float b, float t) { return (1.0f - t) * a + t * b; }

inline void blend(const float* e, const Strides& s, const Cell& cell, float out[3]) {
  const float* p = e + cell.base;
  for (int c = 0; c < 3; ++c) {
    const float c00 = lerp(p[c], p[s.r + c], cell.fr);
    const float c10 = lerp(p[s.g + c], p[s.g + s.r + c], cell.fr);
    const float c01 = lerp(p[s.b + c], p[s.b + s.r + c], cell.fr);
    const float c11 = lerp(p[s.b + s.g + c], p[s.b + s.g + s.r + c], cell.fr);
    out[c] = lerp(lerp(c00, c10, cell.fg), lerp(c01, c11, cell.fg), cell.fb);
  }
}

void require_rgb(const Image& img, const char* op) {
  if (img.channels() != 3) {
    throw InvalidArgument(std::string(op) + ": expected a 3-channel image, got " +
                          std::to_string(img.channels()));
  }
}

void require_basis(std::span<const Lut3D> luts, std::size_t t, const char* op) {
  if (luts.empty()) throw InvalidArgument(std::string(op) + ": no LUTs");
  if (luts.size() != t) {
    throw InvalidArgument(std::string(op) + ": " + std::to_string(luts.size()) + " LUTs but " +
                          std::to_string(t) + " weights");
  }
  for (const Lut3D& l : luts) {
    if (l.n_bins() != luts.front().n_bins()) {
      throw InvalidArgument(std::string(op) + ": LUTs have different lattice sizes");
    }
  }
}

}  // namespace

std::array<float, 3> lookup(const Lut3D& lut, float r, float g, float b) {
  std::array<float, 3> out{};
  blend(lut.entries().data(), strides_of(lut), locate(lut, r, g, b), out.data());
  return out;
}

Image apply_trilinear(const Lut3D& lut, const Image& img) {
  require_rgb(img, "apply_trilinear");
  Image out(img.height(), img.width(), 3, img.space());
  const float* e = lut.entries().data();
  const Strides s = strides_of(lut);
  const int w = img.width();
  parallel_for(0, img.height(), [&](int y) {
    const float* r = img.row(0, y);
    const float* g = img.row(1, y);
    const float* b = img.row(2, y);
    float* o0 = out.row(0, y);
    float* o1 = out.row(1, y);
    float* o2 = out.row(2, y);
    float v[3];
    for (int x = 0; x < w; ++x) {
      blend(e, s, locate(lut, r[x], g[x], b[x]), v);
      o0[x] = v[0];
      o1[x] = v[1];
      o2[x] = v[2];
    }
  });
  return out;
}

Lut3D fuse_luts_points(std::span<const Lut3D> luts, const WeightPoints& w) {
  require_basis(luts, w.size(), "fuse_luts_points");
  Lut3D fused(luts.front().n_bins());
  auto dst = fused.entries();
  for (std::size_t t = 0; t < luts.size(); ++t) {
    const float wt = w.weights[t];
    const auto src = luts[t].entries();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += wt * src[i];
  }
  return fused;
}

Image apply_fused_maps(std::span<const Lut3D> luts, const WeightMaps& maps, const Image& img) {
  require_rgb(img, "apply_fused_maps");
  require_basis(luts, maps.size(), "apply_fused_maps");
  maps.validate();
  if (maps.height() != img.height() || maps.width() != img.width()) {
    throw InvalidArgument("apply_fused_maps: weight maps are " + std::to_string(maps.height()) + "x" +
                          std::to_string(maps.width()) + " but the image is " +
                          std::to_string(img.height()) + "x" + std::to_string(img.width()));
  }
  Image out(img.height(), img.width(), 3, img.space());
  const Lut3D& geom = luts.front();
  const Strides s = strides_of(geom);
  const int w = img.width();
  parallel_for(0, img.height(), [&](int y) {
    const float* r = img.row(0, y);
    const float* g = img.row(1, y);
    const float* b = img.row(2, y);
    float* o0 = out.row(0, y);
    float* o1 = out.row(1, y);
    float* o2 = out.row(2, y);
    float v[3];
    for (int x = 0; x < w; ++x) {
      const Cell cell = locate(geom, r[x], g[x], b[x]);
      float acc[3] = {0.0f, 0.0f, 0.0f};
      for (std::size_t t = 0; t < luts.size(); ++t) {
        const float wt = maps.maps[t].row(0, y)[x];
        blend(luts[t].entries().data(), s, cell, v);
        acc[0] += wt * v[0];
        acc[1] += wt * v[1];
        acc[2] += wt * v[2];
      }
      o0[x] = acc[0];
      o1[x] = acc[1];
      o2[x] = acc[2];
    }
  });
  return out;
}

namespace {

// Visits each adjacent node pair along every axis, handing the entry offsets
// of the lower and upper node.
template <typename F>
void for_each_adjacent(const Lut3D& lut, F f) {
  const int n = lut.n_bins();
  const Strides s = strides_of(lut);
  for (int b = 0; b < n; ++b) {
    for (int g = 0; g < n; ++g) {
      for (int r = 0; r < n; ++r) {
        const std::size_t cur = lut.node_index(r, g, b) * 3;
        if (r + 1 < n) f(cur, cur + s.r);
        if (g + 1 < n) f(cur, cur + s.g);
        if (b + 1 < n) f(cur, cur + s.b);
      }
    }
  }
}

}  // namespace

double smoothness_penalty(const Lut3D& lut) {
  const auto e = lut.entries();
  double sum = 0.0;
  for_each_adjacent(lut, [&](std::size_t cur, std::size_t next) {
    for (int c = 0; c < 3; ++c) {
      const double d = static_cast<double>(e[next + c]) - e[cur + c];
      sum += d * d;
    }
  });
  return sum;
}

double monotonicity_penalty(const Lut3D& lut) {
  const auto e = lut.entries();
  double sum = 0.0;
  for_each_adjacent(lut, [&](std::size_t cur, std::size_t next) {
    for (int c = 0; c < 3; ++c) {
      const double d = std::max(0.0, static_cast<double>(e[cur + c]) - e[next + c]);
      sum += d * d;
    }
  });
  return sum;
}

}  // namespace llflut
