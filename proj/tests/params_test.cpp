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

#include <cstring>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "llflut/params.hpp"
#include "llflut/pipeline.hpp"
#include "llflut/pyramid.hpp"
#include "reference.hpp"

namespace llflut {
namespace {

namespace fs = std::filesystem;
using Bytes = std::vector<std::uint8_t>;

EnhancementParams random_params(std::uint64_t seed, bool with_maps) {
  EnhancementParams p;
  p.luts = {ref::random_lut(9, seed), ref::random_lut(9, seed + 1), ref::random_lut(9, seed + 2)};
  p.weight_points.weights = {0.25f, -0.5f, 1.25f};
  for (int t = 0; t < 3; ++t) p.weight_maps.maps.push_back(ref::random_image(5, 7, 1, seed + 10 + t, ColorSpace::Gray));
  p.sigma_r = 0.137f;
  p.gaussian_conditioning = false;
  if (with_maps) {
    Image a = ref::random_image(10, 14, 1, seed + 20, ColorSpace::Gray);
    Image b = ref::random_image(10, 14, 1, seed + 21, ColorSpace::Gray);
    for (float& v : a.data()) v += 0.1f;
    p.param_maps.levels = {ParamMaps{a, b}, ConstantParams{0.75f, 1.5f}};
  } else {
    p.param_maps.uniform = ConstantParams{0.8f, 1.2f};
  }
  return p;
}

std::uint32_t read_u32(const Bytes& b, std::size_t at) {
  return b[at] | (b[at + 1] << 8) | (b[at + 2] << 16) | (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

nlohmann::json manifest_of(const Bytes& b) {
  const std::uint32_t len = read_u32(b, 6);
  return nlohmann::json::parse(b.begin() + 10, b.begin() + 10 + len);
}

Bytes with_manifest(const Bytes& b, const nlohmann::json& m) {
  const std::uint32_t old_len = read_u32(b, 6);
  const std::string text = m.dump();
  Bytes out(b.begin(), b.begin() + 6);
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(text.size() >> (8 * i)));
  out.insert(out.end(), text.begin(), text.end());
  out.insert(out.end(), b.begin() + 10 + old_len, b.end());
  return out;
}

BundleError load_error(const Bytes& b) {
  try {
    deserialize_bundle(b);
  } catch (const BundleError& e) {
    return e;
  }
  ADD_FAILURE() << "bundle accepted";
  return BundleError(BundleError::Kind::Io, "", "");
}

TEST(HeuristicParamsTest, IdentityConfiguration) {
  const Image lr(30, 54, 3, ColorSpace::SRGB);
  const EnhancementParams p = heuristic_params(lr);
  EXPECT_EQ(p.basis_count(), 3);
  EXPECT_EQ(p.sigma_r, 0.1f);
  float sum = 0.0f;
  for (float w : p.weight_points.weights) sum += w;
  EXPECT_EQ(sum, 1.0f);
  EXPECT_EQ(p.weight_maps.height(), 30);
  EXPECT_EQ(p.weight_maps.width(), 54);
  for (const Lut3D& l : p.luts) EXPECT_EQ(l, identity_lut(33));
  EXPECT_EQ(std::get<ConstantParams>(p.param_maps.uniform), (ConstantParams{1.0f, 1.0f}));
  EXPECT_NO_THROW(p.validate());
}

TEST(ParamsTest, ValidateNamesField) {
  EnhancementParams p = random_params(1, false);
  p.weight_points.weights.pop_back();
  try {
    p.validate();
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("weight_points"), std::string::npos);
  }
  p = random_params(1, false);
  p.sigma_r = 0.0f;
  EXPECT_THROW(p.validate(), InvalidArgument);
}

TEST(BundleTest, RoundTripBitExact) {
  for (bool maps : {false, true}) {
    const EnhancementParams p = random_params(5, maps);
    const Bytes bytes = serialize_bundle(p);
    EXPECT_EQ(std::memcmp(bytes.data(), "LLFP1\n", 6), 0);
    const EnhancementParams back = deserialize_bundle(bytes);
    EXPECT_EQ(back, p);
    EXPECT_EQ(serialize_bundle(back), bytes);
  }
}

TEST(BundleTest, FileRoundTripAndDeterminism) {
  const fs::path dir = fs::temp_directory_path() / "llflut_tests";
  fs::create_directories(dir);
  const EnhancementParams p = random_params(9, true);
  save_bundle(p, dir / "a.llfp");
  save_bundle(p, dir / "b.llfp");
  EXPECT_EQ(load_bundle(dir / "a.llfp"), p);
  std::ifstream a(dir / "a.llfp", std::ios::binary), b(dir / "b.llfp", std::ios::binary);
  EXPECT_EQ(std::string(std::istreambuf_iterator<char>(a), {}), std::string(std::istreambuf_iterator<char>(b), {}));
  try {
    save_bundle(p, "");
    FAIL();
  } catch (const BundleError& e) {
    EXPECT_EQ(e.kind(), BundleError::Kind::Io);
  }
  EXPECT_THROW(load_bundle(dir / "missing.llfp"), BundleError);
}

TEST(BundleTest, HandBuiltMinimalBundle) {
  nlohmann::json m = {{"format", "LLFP1"},
                      {"T", 1},
                      {"n_bins", 2},
                      {"lr_height", 1},
                      {"lr_width", 1},
                      {"sigma_r", 0.1},
                      {"gaussian_conditioning", true},
                      {"param_rule", "uniform"},
                      {"uniform", {{"alpha", 1.0}, {"beta", 1.0}}},
                      {"arrays",
                       {{{"name", "luts"}, {"count", 24}},
                        {{"name", "weight_points"}, {"count", 1}},
                        {{"name", "weight_maps"}, {"count", 1}}}}};
  const std::string text = m.dump();
  Bytes b = {'L', 'L', 'F', 'P', '1', '\n'};
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(text.size() >> (8 * i)));
  b.insert(b.end(), text.begin(), text.end());
  std::vector<float> values;
  for (int bb = 0; bb < 2; ++bb)
    for (int g = 0; g < 2; ++g)
      for (int r = 0; r < 2; ++r) values.insert(values.end(), {float(r), float(g), float(bb)});
  values.push_back(1.0f);
  values.push_back(1.0f);
  for (float v : values) {
    std::uint32_t u;
    std::memcpy(&u, &v, 4);
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
  }
  const EnhancementParams p = deserialize_bundle(b);
  ASSERT_EQ(p.basis_count(), 1);
  EXPECT_EQ(p.luts[0], identity_lut(2));

  // The bundle drives the identity pipeline on an image whose coarsest level is 1x1.
  const Image img = ref::random_image(2, 2, 3, 3);
  PipelineConfig cfg;
  cfg.target_low_res = 8;
  cfg.basis_count = 1;
  cfg.lut_bins = 2;
  EXPECT_EQ(adaptive_levels(2, 2, 8), 1);
  EnhancementParams q = p;
  q.weight_maps = WeightMaps::uniform(1, 1, std::vector<float>{1.0f});
  EXPECT_LT(max_abs_diff(enhance(img, q, cfg), img), 1e-5);
}

TEST(BundleTest, BadMagic) {
  Bytes b = serialize_bundle(random_params(2, false));
  b[3] = 'X';
  const BundleError e = load_error(b);
  EXPECT_EQ(e.kind(), BundleError::Kind::BadMagic);
  EXPECT_EQ(e.field(), "magic");
}

TEST(BundleTest, TruncatedPayload) {
  Bytes b = serialize_bundle(random_params(2, true));
  b.resize(b.size() - 10);
  const BundleError e = load_error(b);
  EXPECT_EQ(e.kind(), BundleError::Kind::Truncated);
  EXPECT_EQ(e.field(), "beta_0");
  EXPECT_NE(std::string(e.what()).find("beta_0"), std::string::npos);
  b.resize(8);
  EXPECT_EQ(load_error(b).kind(), BundleError::Kind::Truncated);
}

TEST(BundleTest, DeclaredCountMismatch) {
  const Bytes b = serialize_bundle(random_params(2, false));
  nlohmann::json m = manifest_of(b);
  m["T"] = 2;  // three LUT arrays on disk, two declared
  BundleError e = load_error(with_manifest(b, m));
  EXPECT_EQ(e.kind(), BundleError::Kind::SizeMismatch);
  EXPECT_EQ(e.field(), "luts");

  m = manifest_of(b);
  m["arrays"][2]["count"] = 12;
  e = load_error(with_manifest(b, m));
  EXPECT_EQ(e.kind(), BundleError::Kind::SizeMismatch);
  EXPECT_EQ(e.field(), "weight_maps");
}

TEST(BundleTest, ManifestAndValueErrors) {
  const Bytes b = serialize_bundle(random_params(2, false));
  nlohmann::json m = manifest_of(b);
  m.erase("sigma_r");
  BundleError e = load_error(with_manifest(b, m));
  EXPECT_EQ(e.kind(), BundleError::Kind::Manifest);
  EXPECT_EQ(e.field(), "sigma_r");

  m = manifest_of(b);
  m["uniform"]["alpha"] = -1.0;
  e = load_error(with_manifest(b, m));
  EXPECT_EQ(e.kind(), BundleError::Kind::InvalidValue);
  EXPECT_NE(e.field().find("param_maps"), std::string::npos);

  Bytes extra = b;
  extra.push_back(0);
  e = load_error(extra);
  EXPECT_EQ(e.kind(), BundleError::Kind::SizeMismatch);
  EXPECT_EQ(e.field(), "payload");
}

TEST(ConditioningTest, CoarsestLayout) {
  const Image band = Image::constant(16, 12, 3, ColorSpace::SRGB, 0.1f);
  const Image residual = Image::constant(8, 6, 3, ColorSpace::SRGB, 0.2f);
  const Image refined = Image::constant(8, 6, 3, ColorSpace::SRGB, 0.3f);
  const Image edges = Image::constant(8, 6, 1, ColorSpace::Gray, 1.0f);
  const Image gauss = Image::constant(16, 12, 3, ColorSpace::SRGB, 0.5f);
  const ConditioningStack s = assemble_coarsest_conditioning(2, band, residual, refined, edges, gauss);
  EXPECT_EQ(s.level, 2);
  ASSERT_EQ(s.stack.channels(), 13);
  EXPECT_EQ(s.stack.height(), 16);
  EXPECT_EQ(s.stack.width(), 12);
  const float expected[13] = {0.1f, 0.1f, 0.1f, 0.2f, 0.2f, 0.2f, 0.3f, 0.3f, 0.3f, 1.0f, 0.5f, 0.5f, 0.5f};
  for (int c = 0; c < 13; ++c)
    for (float v : s.stack.plane(c)) ASSERT_EQ(v, expected[c]) << c;
  int total = 0;
  for (const ChannelRole& r : s.layout) total += r.channels;
  EXPECT_EQ(total, 13);
  EXPECT_EQ(s.layout.front().name, "band");
  EXPECT_EQ(assemble_coarsest_conditioning(2, band, residual, refined, edges, gauss, false).stack.channels(), 10);
  EXPECT_THROW(assemble_coarsest_conditioning(2, band, residual, refined, band, gauss), InvalidArgument);
  EXPECT_THROW(assemble_coarsest_conditioning(2, band, band, refined, edges, gauss), InvalidArgument);
}

TEST(ConditioningTest, InteriorLayout) {
  const Image band = ref::random_image(15, 9, 3, 1);
  const Image coarser = ref::random_image(8, 5, 3, 2);
  const Image gauss = ref::random_image(15, 9, 3, 3);
  const ConditioningStack s = assemble_interior_conditioning(0, band, coarser, gauss);
  ASSERT_EQ(s.stack.channels(), 9);
  const Image up = upsample2(coarser, 15, 9);
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < band.pixel_count(); ++i) {
      ASSERT_EQ(s.stack.plane(c)[i], band.plane(c)[i]);
      ASSERT_EQ(s.stack.plane(3 + c)[i], up.plane(c)[i]);
      ASSERT_EQ(s.stack.plane(6 + c)[i], gauss.plane(c)[i]);
    }
  }
  EXPECT_EQ(assemble_interior_conditioning(0, band, coarser, gauss, false).stack.channels(), 6);
  EXPECT_THROW(assemble_interior_conditioning(0, band, ref::random_image(4, 5, 3, 2), gauss), InvalidArgument);
}

}  // namespace
}  // namespace llflut
