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

#include "llflut/edge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace llflut {
namespace {

constexpr double kRec709[3] = {0.2126, 0.7152, 0.0722};

struct Plane {
  int h = 0, w = 0;
  std::vector<double> v;

  Plane(int h_, int w_) : h(h_), w(w_), v(static_cast<std::size_t>(h_) * w_, 0.0) {}
  double& at(int y, int x) { return v[static_cast<std::size_t>(y) * w + x]; }
  double at(int y, int x) const { return v[static_cast<std::size_t>(y) * w + x]; }
  double clamped(int y, int x) const { return at(std::clamp(y, 0, h - 1), std::clamp(x, 0, w - 1)); }
};

Plane luminance(const Image& img) {
  Plane out(img.height(), img.width());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (img.channels() >= 3) {
        out.at(y, x) = kRec709[0] * img.at(0, y, x) + kRec709[1] * img.at(1, y, x) + kRec709[2] * img.at(2, y, x);
      } else {
        out.at(y, x) = img.at(0, y, x);
      }
    }
  }
  return out;
}

Plane gaussian_blur(const Plane& src, double sigma) {
  if (sigma <= 0.0) return src;
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) sum += k[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
  for (double& t : k) t /= sum;

  Plane tmp(src.h, src.w), out(src.h, src.w);
  for (int y = 0; y < src.h; ++y) {
    for (int x = 0; x < src.w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) acc += k[i + radius] * src.clamped(y, x + i);
      tmp.at(y, x) = acc;
    }
  }
  for (int y = 0; y < src.h; ++y) {
    for (int x = 0; x < src.w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) acc += k[i + radius] * tmp.clamped(y + i, x);
      out.at(y, x) = acc;
    }
  }
  return out;
}

}  // namespace

Image canny(const Image& img, const CannyParams& params) {
  if (!(params.low_thresh > 0.0 && params.low_thresh < params.high_thresh && params.high_thresh <= 1.0)) {
    throw InvalidArgument("canny: thresholds must satisfy 0 < low < high <= 1");
  }
  if (params.blur_sigma < 0.0) throw InvalidArgument("canny: blur sigma must be non-negative");
  const int h = img.height(), w = img.width();
  Image edges(h, w, 1, ColorSpace::Gray, 0.0f);

  const Plane blurred = gaussian_blur(luminance(img), params.blur_sigma);
  Plane gx(h, w), gy(h, w), mag(h, w);
  double peak = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      auto p = [&](int dy, int dx) { return blurred.clamped(y + dy, x + dx); };
      const double sx = (p(-1, 1) + 2 * p(0, 1) + p(1, 1)) - (p(-1, -1) + 2 * p(0, -1) + p(1, -1));
      const double sy = (p(1, -1) + 2 * p(1, 0) + p(1, 1)) - (p(-1, -1) + 2 * p(-1, 0) + p(-1, 1));
      gx.at(y, x) = sx;
      gy.at(y, x) = sy;
      mag.at(y, x) = std::hypot(sx, sy);
      peak = std::max(peak, mag.at(y, x));
    }
  }
  if (peak <= 0.0) return edges;

  // Non-maximum suppression. A pixel survives if it beats the neighbour
  // behind it along the gradient and is not beaten by the one ahead, so
  // equal-magnitude pairs keep exactly one pixel.
  static const double kTan22 = std::tan(std::numbers::pi / 8.0);
  static const double kTan67 = std::tan(3.0 * std::numbers::pi / 8.0);
  auto mag_or_zero = [&](int y, int x) { return (y < 0 || y >= h || x < 0 || x >= w) ? 0.0 : mag.at(y, x); };
  Plane thin(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double m = mag.at(y, x);
      if (m <= 0.0) continue;
      const double ax = std::abs(gx.at(y, x)), ay = std::abs(gy.at(y, x));
      int dx, dy;
      if (ay <= kTan22 * ax) {
        dx = 1, dy = 0;
      } else if (ay >= kTan67 * ax) {
        dx = 0, dy = 1;
      } else if ((gx.at(y, x) > 0) == (gy.at(y, x) > 0)) {
        dx = 1, dy = 1;
      } else {
        dx = -1, dy = 1;
      }
      if (m > mag_or_zero(y - dy, x - dx) && m >= mag_or_zero(y + dy, x + dx)) thin.at(y, x) = m;
    }
  }

  const double high = params.high_thresh * peak;
  const double low = params.low_thresh * peak;
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (thin.at(y, x) >= high) {
        edges.at(0, y, x) = 1.0f;
        stack.emplace_back(y, x);
      }
    }
  }
  while (!stack.empty()) {
    const auto [y, x] = stack.back();
    stack.pop_back();
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int ny = y + dy, nx = x + dx;
        if (ny < 0 || ny >= h || nx < 0 || nx >= w) continue;
        if (edges.at(0, ny, nx) == 0.0f && thin.at(ny, nx) >= low) {
          edges.at(0, ny, nx) = 1.0f;
          stack.emplace_back(ny, nx);
        }
      }
    }
  }
  return edges;
}

}  // namespace llflut
