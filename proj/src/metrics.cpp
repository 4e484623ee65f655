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

#include "llflut/metrics.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "llflut/color.hpp"
#include "llflut/parallel.hpp"

namespace llflut {
namespace {

void require_same(const Image& a, const Image& b, const char* op) {
  if (!a.same_shape(b)) {
    throw InvalidArgument(std::string(op) + ": shape mismatch " + std::to_string(a.height()) + "x" +
                          std::to_string(a.width()) + "x" + std::to_string(a.channels()) + " vs " +
                          std::to_string(b.height()) + "x" + std::to_string(b.width()) + "x" +
                          std::to_string(b.channels()));
  }
}

constexpr int kSsimRadius = 5;
constexpr double kSsimSigma = 1.5;

// scipy.ndimage "reflect": d c b a | a b c d | d c b a
int reflect(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - 1 - i;
}

std::vector<double> gaussian_window() {
  std::vector<double> k(2 * kSsimRadius + 1);
  double sum = 0.0;
  for (int i = -kSsimRadius; i <= kSsimRadius; ++i) {
    sum += k[i + kSsimRadius] = std::exp(-0.5 * i * i / (kSsimSigma * kSsimSigma));
  }
  for (double& v : k) v /= sum;
  return k;
}

// Separable Gaussian filter of a double plane with reflect padding.
std::vector<double> filter(const std::vector<double>& src, int h, int w, const std::vector<double>& k) {
  std::vector<double> tmp(src.size()), out(src.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -kSsimRadius; i <= kSsimRadius; ++i) {
        acc += k[i + kSsimRadius] * src[static_cast<std::size_t>(y) * w + reflect(x + i, w)];
      }
      tmp[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -kSsimRadius; i <= kSsimRadius; ++i) {
        acc += k[i + kSsimRadius] * tmp[static_cast<std::size_t>(reflect(y + i, h)) * w + x];
      }
      out[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  return out;
}

double ssim_plane(std::span<const float> pa, std::span<const float> pb, int h, int w) {
  constexpr double c1 = 0.01 * 0.01;
  constexpr double c2 = 0.03 * 0.03;
  const auto k = gaussian_window();
  const std::size_t n = pa.size();
  std::vector<double> a(n), b(n), aa(n), bb(n), ab(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = pa[i];
    b[i] = pb[i];
    aa[i] = a[i] * a[i];
    bb[i] = b[i] * b[i];
    ab[i] = a[i] * b[i];
  }
  const auto ma = filter(a, h, w, k), mb = filter(b, h, w, k);
  const auto maa = filter(aa, h, w, k), mbb = filter(bb, h, w, k), mab = filter(ab, h, w, k);
  double sum = 0.0;
  int count = 0;
  for (int y = kSsimRadius; y < h - kSsimRadius; ++y) {
    for (int x = kSsimRadius; x < w - kSsimRadius; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      const double va = maa[i] - ma[i] * ma[i];
      const double vb = mbb[i] - mb[i] * mb[i];
      const double cov = mab[i] - ma[i] * mb[i];
      sum += ((2 * ma[i] * mb[i] + c1) * (2 * cov + c2)) /
             ((ma[i] * ma[i] + mb[i] * mb[i] + c1) * (va + vb + c2));
      ++count;
    }
  }
  return sum / count;
}

}  // namespace

double psnr(const Image& a, const Image& b) {
  require_same(a, b, "psnr");
  const auto da = a.data(), db = b.data();
  // Per-row partial sums keep the reduction order fixed.
  const int rows = a.channels() * a.height();
  std::vector<double> partial(rows, 0.0);
  parallel_for(0, rows, [&](int r) {
    const std::size_t base = static_cast<std::size_t>(r) * a.width();
    double s = 0.0;
    for (int x = 0; x < a.width(); ++x) {
      const double d = static_cast<double>(da[base + x]) - db[base + x];
      s += d * d;
    }
    partial[r] = s;
  });
  double sum = 0.0;
  for (double s : partial) sum += s;
  if (sum == 0.0) return kPsnrIdentical;
  const double mse = sum / static_cast<double>(da.size());
  return 10.0 * std::log10(1.0 / mse);
}

double ssim(const Image& a, const Image& b) {
  require_same(a, b, "ssim");
  const int win = 2 * kSsimRadius + 1;
  if (a.height() < win || a.width() < win) {
    throw InvalidArgument("ssim: images must be at least " + std::to_string(win) + "x" + std::to_string(win));
  }
  std::vector<double> per_channel(a.channels());
  parallel_for(0, a.channels(), [&](int c) { per_channel[c] = ssim_plane(a.plane(c), b.plane(c), a.height(), a.width()); });
  double sum = 0.0;
  for (double v : per_channel) sum += v;
  return sum / a.channels();
}

double delta_e(const Image& a, const Image& b) {
  require_same(a, b, "delta_e");
  for (const Image* img : {&a, &b}) {
    if (img->channels() != 3 || (img->space() != ColorSpace::SRGB && img->space() != ColorSpace::LinearRGB)) {
      throw InvalidArgument("delta_e: inputs must be 3-channel srgb or linear-rgb");
    }
  }
  auto lab_at = [](const Image& img, std::size_t i) {
    std::array<double, 3> rgb = {img.plane(0)[i], img.plane(1)[i], img.plane(2)[i]};
    if (img.space() == ColorSpace::SRGB) {
      for (double& v : rgb) v = srgb_decode(v);
    }
    return xyz_to_lab(linear_rgb_to_xyz(rgb));
  };
  double sum = 0.0;
  for (std::size_t i = 0; i < a.pixel_count(); ++i) {
    const auto la = lab_at(a, i), lb = lab_at(b, i);
    sum += std::sqrt((la[0] - lb[0]) * (la[0] - lb[0]) + (la[1] - lb[1]) * (la[1] - lb[1]) +
                     (la[2] - lb[2]) * (la[2] - lb[2]));
  }
  return sum / static_cast<double>(a.pixel_count());
}

MetricReport evaluate(const Image& a, const Image& b) {
  MetricReport r;
  r.psnr = psnr(a, b);
  r.ssim = ssim(a, b);
  r.delta_e = delta_e(a, b);
  return r;
}

}  // namespace llflut
