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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "llflut/bench.hpp"
#include "llflut/cube.hpp"
#include "llflut/image_io.hpp"
#include "llflut/params.hpp"
#include "llflut/pyramid.hpp"
#include "reference.hpp"

namespace llflut {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "llflut");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / "llflut_cli" /
           ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    Image img = ref::random_image(90, 120, 3, 42);
    for (float& v : img.data()) v = std::round(v * 255.0f) / 255.0f;
    input_ = img;
    save_image(img, path("in.png"), FileKind::Png8);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  Image input_;
};

TEST_F(CliTest, UsageErrors) {
  Result r = run_cli({});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  r = run_cli({"eval", "--bogus"});
  EXPECT_EQ(r.code, cli::kUsage);
  r = run_cli({"frobnicate"});
  EXPECT_EQ(r.code, cli::kUsage);
  r = run_cli({"--help"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("enhance"), std::string::npos);
}

TEST_F(CliTest, RuntimeFailureExitsOne) {
  const Result r = run_cli({"eval", "--a", path("missing.png"), "--b", path("in.png")});
  EXPECT_EQ(r.code, cli::kFailure);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST_F(CliTest, EvalIdenticalJson) {
  const Result r = run_cli({"eval", "--a", path("in.png"), "--b", path("in.png"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["delta_e"].get<double>(), 0.0);
  EXPECT_TRUE(j["psnr"].is_null());
  EXPECT_TRUE(j["psnr_infinite"].get<bool>());
  EXPECT_TRUE(j["lpips"].is_null());
  EXPECT_NEAR(j["ssim"].get<double>(), 1.0, 1e-12);
}

TEST_F(CliTest, EnhanceWithIdentityBundle) {
  const int n = adaptive_levels(90, 120);
  Image lr = input_;
  for (int k = 0; k < n; ++k) lr = downsample2(lr);
  save_bundle(heuristic_params(lr), path("id.llfp"));
  for (const char* out : {"out.png", "out.tif"}) {
    const Result r = run_cli({"--threads", "2", "enhance", "--input", path("in.png"), "--bundle", path("id.llfp"),
                              "--output", path(out)});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_LT(max_abs_diff(load_image(path(out)), input_), 1e-5) << out;
  }
  const Result r = run_cli({"enhance", "--input", path("in.png"), "--output", path("default.png")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(load_image(path("default.png")), input_);
}

TEST_F(CliTest, EnhanceWithConfig) {
  std::ofstream(path("cfg.json")) << R"({"llf_mode": "fast", "fast_k": 8, "T": 2, "lut_bins": 17})";
  Result r = run_cli({"enhance", "--input", path("in.png"), "--config", path("cfg.json"), "--output", path("o.png")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(load_image(path("o.png")), input_);
  std::ofstream(path("bad.json")) << R"({"llf_mode": "slow"})";
  r = run_cli({"enhance", "--input", path("in.png"), "--config", path("bad.json"), "--output", path("o.png")});
  EXPECT_EQ(r.code, cli::kFailure);
}

TEST_F(CliTest, DecomposeReconstruct) {
  Result r = run_cli({"decompose", "--input", path("in.png"), "--out-dir", path("pyr"), "--levels", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json m = json::parse(std::ifstream(path("pyr/manifest.json")));
  EXPECT_EQ(m["levels"].get<int>(), 3);
  EXPECT_EQ(m["bands"][1]["height"].get<int>(), 45);
  EXPECT_EQ(load_image(path("pyr/band_00.tif")).height(), 90);
  r = run_cli({"reconstruct", "--manifest", path("pyr/manifest.json"), "--output", path("back.tif"), "--float"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LT(max_abs_diff(load_image(path("back.tif")), input_), 1e-5);
}

TEST_F(CliTest, LutApply) {
  save_cube(identity_lut(17), path("id.cube"));
  const Result r = run_cli({"lut-apply", "--input", path("in.png"), "--lut", path("id.cube"), "--output", path("o.png")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(load_image(path("o.png")), input_);
  std::ofstream(path("bad.cube")) << "LUT_3D_SIZE 2\n0 0 0\n";
  EXPECT_EQ(run_cli({"lut-apply", "--input", path("in.png"), "--lut", path("bad.cube"), "--output", path("x.png")}).code,
            cli::kFailure);
}

TEST_F(CliTest, LlfAndEdges) {
  Result r = run_cli({"llf", "--input", path("in.png"), "--output", path("l.tif"), "--float", "--alpha", "1",
                      "--beta", "1", "--k", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LT(max_abs_diff(load_image(path("l.tif")), input_), 1e-5);
  r = run_cli({"llf", "--input", path("in.png"), "--output", path("d.png"), "--alpha", "0.5", "--direct",
               "--levels", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run_cli({"edges", "--input", path("in.png"), "--output", path("e.png")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Image e = load_image(path("e.png"));
  EXPECT_EQ(e.channels(), 1);
  for (float v : e.data()) EXPECT_TRUE(v == 0.0f || v == 1.0f);
}

TEST_F(CliTest, ExportConditioning) {
  const Result r = run_cli({"export-conditioning", "--input", path("in.png"), "--out-dir", path("cond")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(std::ifstream(path("cond/conditioning.json")));
  ASSERT_EQ(j["levels"].size(), 1u);
  EXPECT_EQ(j["levels"][0]["channels"].get<int>(), 13);
  const Image s = load_image(path("cond") + "/" + j["levels"][0]["file"].get<std::string>());
  EXPECT_EQ(s.channels(), 13);
  EXPECT_EQ(s.height(), 90);
}

TEST_F(CliTest, BenchJson) {
  const Result r = run_cli({"--threads", "1", "--seed", "3", "bench", "--sizes", "64x96,48x40", "--reps", "2", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["threads"].get<int>(), 1);
  EXPECT_EQ(j["seed"].get<int>(), 3);
  ASSERT_EQ(j["entries"].size(), 2u);
  EXPECT_EQ(j["entries"][0]["pixels"].get<int>(), 64 * 96);
  const Result table = run_cli({"bench", "--sizes", "64x64", "--reps", "1"});
  ASSERT_EQ(table.code, 0);
  EXPECT_NE(table.out.find("64x64"), std::string::npos);
  EXPECT_EQ(run_cli({"bench", "--sizes", "huge"}).code, cli::kFailure);
}

TEST(BenchTest, SizesAndSummary) {
  EXPECT_EQ(parse_bench_size("480p").pixels(), 409920);
  EXPECT_EQ(parse_bench_size("4K").pixels(), 8294400);
  EXPECT_EQ(parse_bench_size("30x40").width, 40);
  EXPECT_THROW(parse_bench_size("30x"), InvalidArgument);
  const Summary s = summarize({5, 1, 4, 2, 3, 10, 6, 7, 8, 9});
  EXPECT_EQ(s.median, 5.5);
  EXPECT_EQ(s.p95, 10);
  EXPECT_EQ(s.min, 1);
  EXPECT_LE(s.median, s.max);
}

TEST(BenchTest, ReportEntries) {
  const BenchReport r = bench({}, {{48, 64, "a"}, {96, 128, "b"}}, 3, 7);
  ASSERT_EQ(r.entries.size(), 2u);
  EXPECT_EQ(r.repetitions, 3);
  EXPECT_EQ(r.entries[1].total_samples.size(), 3u);
  EXPECT_LE(r.entries[1].total.median, r.entries[1].total.max);
  EXPECT_THROW(bench({}, {{8, 8, "x"}}, 0, 1), InvalidArgument);
  EXPECT_EQ(synthetic_image(10, 10, 5), synthetic_image(10, 10, 5));
}

}  // namespace
}  // namespace llflut
