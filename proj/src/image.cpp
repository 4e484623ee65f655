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

#include "llflut/image.hpp"

#include <algorithm>
#include <cmath>

#include "llflut/parallel.hpp"

namespace llflut {

std::string_view to_string(ColorSpace space) {
  switch (space) {
    case ColorSpace::LinearRGB: return "linear-rgb";
    case ColorSpace::SRGB: return "srgb";
    case ColorSpace::CIEXYZ: return "cie-xyz";
    case ColorSpace::CIELAB: return "cie-lab";
    case ColorSpace::Gray: return "gray";
  }
  return "unknown";
}

Image::Image(int height, int width, int channels, ColorSpace space, float fill)
    : height_(height), width_(width), channels_(channels), space_(space) {
  if (height < 1 || width < 1) {
    throw InvalidArgument("image dimensions must be positive, got " + std::to_string(height) +
                          "x" + std::to_string(width));
  }
  if (channels < 1) throw InvalidArgument("image must have at least one channel");
  data_.assign(static_cast<std::size_t>(height) * width * channels, fill);
}

Image Image::channel(int c) const {
  if (c < 0 || c >= channels_) throw InvalidArgument("channel index out of range");
  Image out(height_, width_, 1, channels_ == 1 ? space_ : ColorSpace::Gray);
  const auto src = plane(c);
  std::copy(src.begin(), src.end(), out.data_.begin());
  return out;
}

double max_abs_diff(const Image& a, const Image& b) {
  if (!a.same_shape(b)) throw InvalidArgument("max_abs_diff: shape mismatch");
  double worst = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    worst = std::max(worst, std::abs(static_cast<double>(da[i]) - db[i]));
  }
  return worst;
}

Image clamp(Image img, float lo, float hi) {
  for (float& v : img.data()) v = std::clamp(v, lo, hi);
  return img;
}

namespace {

struct Tap {
  int i0;
  int i1;
  float t;
};

std::vector<Tap> bilinear_taps(int in, int out) {
  std::vector<Tap> taps(out);
  const double scale = static_cast<double>(in) / out;
  for (int o = 0; o < out; ++o) {
    double src = (o + 0.5) * scale - 0.5;
    src = std::clamp(src, 0.0, static_cast<double>(in - 1));
    const int i0 = std::min(static_cast<int>(std::floor(src)), in - 1);
    const int i1 = std::min(i0 + 1, in - 1);
    taps[o] = {i0, i1, static_cast<float>(src - i0)};
  }
  return taps;
}

}  // namespace

Image resize_bilinear(const Image& img, int out_h, int out_w) {
  if (out_h < 1 || out_w < 1) {
    throw InvalidArgument("resize_bilinear: target dimensions must be positive");
  }
  if (img.empty()) throw InvalidArgument("resize_bilinear: empty image");
  if (out_h == img.height() && out_w == img.width()) return img;

  const auto ty = bilinear_taps(img.height(), out_h);
  const auto tx = bilinear_taps(img.width(), out_w);
  Image out(out_h, out_w, img.channels(), img.space());
  const int rows = img.channels() * out_h;
  parallel_for(0, rows, [&](int r) {
    const int c = r / out_h;
    const int y = r % out_h;
    const float* a = img.row(c, ty[y].i0);
    const float* b = img.row(c, ty[y].i1);
    const float wy = ty[y].t;
    float* dst = out.row(c, y);
    for (int x = 0; x < out_w; ++x) {
      const Tap& t = tx[x];
      const float top = a[t.i0] + t.t * (a[t.i1] - a[t.i0]);
      const float bot = b[t.i0] + t.t * (b[t.i1] - b[t.i0]);
      dst[x] = top + wy * (bot - top);
    }
  });
  return out;
}

Image concat_channels(std::span<const Image* const> parts) {
  if (parts.empty()) throw InvalidArgument("concat_channels: no inputs");
  const Image& first = *parts.front();
  int total = 0;
  for (const Image* p : parts) {
    if (!p->same_dims(first)) throw InvalidArgument("concat_channels: dimension mismatch");
    total += p->channels();
  }
  Image out(first.height(), first.width(), total, first.space());
  auto dst = out.data().begin();
  for (const Image* p : parts) dst = std::copy(p->data().begin(), p->data().end(), dst);
  return out;
}

}  // namespace llflut
