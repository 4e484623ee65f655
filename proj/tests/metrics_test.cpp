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

#include <gtest/gtest.h>

#include "llflut/metrics.hpp"
#include "reference.hpp"

namespace llflut {
namespace {

// Pattern with no sample at mid-gray, so x and 1 - x differ everywhere.
Image checker_pattern() {
  Image img(40, 48, 1, ColorSpace::Gray);
  for (int y = 0; y < 40; ++y)
    for (int x = 0; x < 48; ++x) {
      const double u = 0.5 + 0.5 * std::sin(0.37 * x) * std::cos(0.23 * y);
      img.at(0, y, x) = static_cast<float>((x + y) % 2 == 1 ? 0.1 + 0.3 * u : 0.6 + 0.3 * u);
    }
  return img;
}

Image offset(const Image& img, float d) {
  Image out = img;
  for (float& v : out.data()) v += d;
  return out;
}

TEST(PsnrTest, ClosedForms) {
  const Image a = Image::constant(16, 16, 3, ColorSpace::SRGB, 0.2f);
  EXPECT_EQ(psnr(a, a), kPsnrIdentical);
  EXPECT_NEAR(psnr(a, offset(a, 0.1f)), 20.0, 1e-4);
  EXPECT_NEAR(psnr(a, offset(a, 0.5f)), 6.0206, 1e-4);
  EXPECT_THROW(psnr(a, Image(16, 15, 3, ColorSpace::SRGB)), InvalidArgument);
}

TEST(PsnrTest, DecreasesWithNoiseAmplitude) {
  const Image base = ref::random_image(32, 32, 3, 1);
  const Image noise = ref::random_image(32, 32, 3, 2);
  double prev = kPsnrIdentical;
  for (float amp : {0.01f, 0.02f, 0.05f, 0.1f, 0.2f}) {
    Image b = base;
    for (std::size_t i = 0; i < b.size(); ++i) b.data()[i] += amp * (noise.data()[i] - 0.5f);
    const double p = psnr(base, b);
    EXPECT_LT(p, prev);
    prev = p;
  }
}

TEST(SsimTest, IdenticalAndSymmetric) {
  const Image a = ref::random_image(30, 25, 3, 3);
  const Image b = ref::random_image(30, 25, 3, 4);
  EXPECT_NEAR(ssim(a, a), 1.0, 1e-12);
  EXPECT_NEAR(ssim(a, b), ssim(b, a), 1e-12);
  EXPECT_LE(ssim(a, b), 1.0);
}

TEST(SsimTest, ConstantsClosedForm) {
  const Image a = Image::constant(20, 20, 1, ColorSpace::Gray, 0.25f);
  const Image b = Image::constant(20, 20, 1, ColorSpace::Gray, 0.75f);
  const double c1 = 0.01 * 0.01;
  const double e = (2 * 0.25 * 0.75 + c1) / (0.25 * 0.25 + 0.75 * 0.75 + c1);
  EXPECT_NEAR(ssim(a, b), e, 1e-9);
}

TEST(SsimTest, NegativeMatchesReferenceImplementation) {
  // Value from skimage.metrics.structural_similarity with gaussian_weights,
  // sigma 1.5, population covariance and data_range 1.
  const Image a = checker_pattern();
  Image neg = a;
  for (float& v : neg.data()) v = 1.0f - v;
  EXPECT_NEAR(ssim(a, neg), -0.9603928448877117, 1e-6);
}

TEST(SsimTest, ColourPairMatchesReferenceImplementation) {
  const Image a = checker_pattern();
  Image x(40, 48, 3, ColorSpace::SRGB), y(40, 48, 3, ColorSpace::SRGB);
  for (std::size_t i = 0; i < a.pixel_count(); ++i) {
    const float v = a.data()[i];
    x.plane(0)[i] = v;
    x.plane(1)[i] = 0.8f * v + 0.1f;
    x.plane(2)[i] = 1.0f - v * v;
    y.plane(0)[i] = v * v;
    y.plane(1)[i] = v;
    y.plane(2)[i] = 0.5f * v + 0.25f;
  }
  EXPECT_NEAR(ssim(x, y), 0.37803244423085686, 1e-6);
}

TEST(SsimTest, RejectsSmallOrMismatched) {
  EXPECT_THROW(ssim(Image(10, 40, 1, ColorSpace::Gray), Image(10, 40, 1, ColorSpace::Gray)), InvalidArgument);
  EXPECT_THROW(ssim(Image(20, 20, 1, ColorSpace::Gray), Image(20, 21, 1, ColorSpace::Gray)), InvalidArgument);
}

TEST(DeltaETest, WhiteBlackAndIdentical) {
  const Image white = Image::constant(4, 4, 3, ColorSpace::SRGB, 1.0f);
  const Image black = Image::constant(4, 4, 3, ColorSpace::SRGB, 0.0f);
  EXPECT_NEAR(delta_e(white, black), 100.0, 0.01);
  EXPECT_EQ(delta_e(white, white), 0.0);
  EXPECT_THROW(delta_e(white, Image(4, 3, 3, ColorSpace::SRGB)), InvalidArgument);
}

TEST(DeltaETest, RandomPairMatchesOracle) {
  const Image a = ref::random_image(9, 13, 3, 5);
  const Image b = ref::random_image(9, 13, 3, 6);
  double sum = 0.0;
  for (int y = 0; y < 9; ++y)
    for (int x = 0; x < 13; ++x) {
      auto lab = [&](const Image& img) {
        return ref::lab_of_linear(ref::srgb_to_linear(img.at(0, y, x)), ref::srgb_to_linear(img.at(1, y, x)),
                                  ref::srgb_to_linear(img.at(2, y, x)));
      };
      const auto la = lab(a), lb = lab(b);
      sum += std::sqrt((la[0] - lb[0]) * (la[0] - lb[0]) + (la[1] - lb[1]) * (la[1] - lb[1]) +
                       (la[2] - lb[2]) * (la[2] - lb[2]));
    }
  EXPECT_NEAR(delta_e(a, b), sum / (9 * 13), 1e-6);
  EXPECT_NEAR(delta_e(a, b), delta_e(b, a), 1e-12);
}

TEST(MetricReportTest, Evaluate) {
  const Image a = ref::random_image(24, 24, 3, 7);
  const MetricReport same = evaluate(a, a);
  EXPECT_TRUE(same.psnr_infinite());
  EXPECT_NEAR(same.ssim, 1.0, 1e-12);
  EXPECT_EQ(same.delta_e, 0.0);
  EXPECT_FALSE(same.lpips.has_value());
  const MetricReport diff = evaluate(a, ref::random_image(24, 24, 3, 8));
  EXPECT_FALSE(diff.psnr_infinite());
  EXPECT_GT(diff.delta_e, 0.0);
}

}  // namespace
}  // namespace llflut
