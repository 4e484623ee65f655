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

#include "llflut/color.hpp"

#include <cmath>
#include <string>

namespace llflut {
namespace {

constexpr double kRgbToXyz[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};

constexpr double kXyzToRgb[3][3] = {
    {3.2404542, -1.5371385, -0.4985314},
    {-0.9692660, 1.8760108, 0.0415560},
    {0.0556434, -0.2040259, 1.0572252},
};

constexpr double kLabEpsilon = 216.0 / 24389.0;  // (6/29)^3
constexpr double kLabKappa = 24389.0 / 27.0;

void require_space(const Image& img, ColorSpace expected, const char* op) {
  if (img.space() != expected) {
    throw InvalidArgument(std::string(op) + ": expected " + std::string(to_string(expected)) +
                          " input, got " + std::string(to_string(img.space())));
  }
}

void require_rgb(const Image& img, const char* op) {
  if (img.channels() != 3) {
    throw InvalidArgument(std::string(op) + ": expected 3 channels, got " +
                          std::to_string(img.channels()));
  }
}

template <typename F>
Image map_samples(const Image& img, ColorSpace out_space, F f) {
  Image out(img.height(), img.width(), img.channels(), out_space);
  const auto src = img.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = static_cast<float>(f(src[i]));
  return out;
}

// Applies a per-pixel 3-vector transform to a planar RGB-like image.
template <typename F>
Image map_pixels(const Image& img, ColorSpace out_space, F f) {
  Image out(img.height(), img.width(), 3, out_space);
  const auto n = img.pixel_count();
  const auto p0 = img.plane(0), p1 = img.plane(1), p2 = img.plane(2);
  auto o0 = out.plane(0), o1 = out.plane(1), o2 = out.plane(2);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = f(std::array<double, 3>{p0[i], p1[i], p2[i]});
    o0[i] = static_cast<float>(v[0]);
    o1[i] = static_cast<float>(v[1]);
    o2[i] = static_cast<float>(v[2]);
  }
  return out;
}

std::array<double, 3> mul(const double (&m)[3][3], const std::array<double, 3>& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
          m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
          m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
}

double lab_f(double t) {
  return t > kLabEpsilon ? std::cbrt(t) : (kLabKappa * t + 16.0) / 116.0;
}

double lab_f_inv(double f) {
  const double t = f * f * f;
  return t > kLabEpsilon ? t : (116.0 * f - 16.0) / kLabKappa;
}

}  // namespace

double srgb_decode(double v) {
  return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

double srgb_encode(double v) {
  return v <= 0.0031308 ? v * 12.92 : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

Image srgb_to_linear(const Image& img) {
  require_space(img, ColorSpace::SRGB, "srgb_to_linear");
  return map_samples(img, ColorSpace::LinearRGB, srgb_decode);
}

Image linear_to_srgb(const Image& img) {
  require_space(img, ColorSpace::LinearRGB, "linear_to_srgb");
  return map_samples(img, ColorSpace::SRGB, srgb_encode);
}

std::array<double, 3> linear_rgb_to_xyz(const std::array<double, 3>& rgb) {
  return mul(kRgbToXyz, rgb);
}

std::array<double, 3> xyz_to_lab(const std::array<double, 3>& xyz) {
  const double fx = lab_f(xyz[0] / kD65White[0]);
  const double fy = lab_f(xyz[1] / kD65White[1]);
  const double fz = lab_f(xyz[2] / kD65White[2]);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

Image xyz_to_linear_rgb(const Image& img) {
  require_space(img, ColorSpace::CIEXYZ, "xyz_to_linear_rgb");
  require_rgb(img, "xyz_to_linear_rgb");
  return map_pixels(img, ColorSpace::LinearRGB,
                    [](const std::array<double, 3>& v) { return mul(kXyzToRgb, v); });
}

Image linear_rgb_to_xyz(const Image& img) {
  require_space(img, ColorSpace::LinearRGB, "linear_rgb_to_xyz");
  require_rgb(img, "linear_rgb_to_xyz");
  return map_pixels(img, ColorSpace::CIEXYZ,
                    [](const std::array<double, 3>& v) { return mul(kRgbToXyz, v); });
}

Image xyz_to_lab(const Image& img) {
  require_space(img, ColorSpace::CIEXYZ, "xyz_to_lab");
  require_rgb(img, "xyz_to_lab");
  return map_pixels(img, ColorSpace::CIELAB,
                    [](const std::array<double, 3>& v) { return xyz_to_lab(v); });
}

Image lab_to_xyz(const Image& img) {
  require_space(img, ColorSpace::CIELAB, "lab_to_xyz");
  require_rgb(img, "lab_to_xyz");
  return map_pixels(img, ColorSpace::CIEXYZ, [](const std::array<double, 3>& lab) {
    const double fy = (lab[0] + 16.0) / 116.0;
    const double fx = fy + lab[1] / 500.0;
    const double fz = fy - lab[2] / 200.0;
    return std::array<double, 3>{lab_f_inv(fx) * kD65White[0], lab_f_inv(fy) * kD65White[1],
                                 lab_f_inv(fz) * kD65White[2]};
  });
}

Image rgb_to_lab(const Image& img) {
  require_rgb(img, "rgb_to_lab");
  bool encoded = false;
  if (img.space() == ColorSpace::SRGB) {
    encoded = true;
  } else if (img.space() != ColorSpace::LinearRGB) {
    throw InvalidArgument("rgb_to_lab: expected linear-rgb or srgb input, got " +
                          std::string(to_string(img.space())));
  }
  return map_pixels(img, ColorSpace::CIELAB, [encoded](std::array<double, 3> rgb) {
    if (encoded) {
      for (double& v : rgb) v = srgb_decode(v);
    }
    return xyz_to_lab(mul(kRgbToXyz, rgb));
  });
}

}  // namespace llflut
