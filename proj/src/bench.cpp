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

#include "llflut/bench.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>

#include "llflut/parallel.hpp"
#include "llflut/pyramid.hpp"

namespace llflut {

Summary summarize(std::vector<double> samples) {
  if (samples.empty()) return {};
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  Summary s;
  s.median = n % 2 ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
  // Nearest-rank percentile.
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
  s.p95 = samples[std::clamp<std::size_t>(rank, 1, n) - 1];
  s.min = samples.front();
  s.max = samples.back();
  return s;
}

BenchSize parse_bench_size(const std::string& token) {
  std::string t;
  for (char c : token) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "480p") return {480, 854, "480p"};
  if (t == "720p") return {720, 1280, "720p"};
  if (t == "1080p") return {1080, 1920, "1080p"};
  if (t == "4k" || t == "2160p") return {2160, 3840, "4k"};
  const auto x = t.find('x');
  if (x != std::string::npos) {
    try {
      std::size_t used_h = 0, used_w = 0;
      const int h = std::stoi(t.substr(0, x), &used_h);
      const int w = std::stoi(t.substr(x + 1), &used_w);
      if (used_h == x && used_w == t.size() - x - 1 && h > 0 && w > 0) return {h, w, t};
    } catch (const std::exception&) {
    }
  }
  throw InvalidArgument("unrecognised size '" + token + "' (use 480p, 720p, 1080p, 4k or HxW)");
}

Image synthetic_image(int height, int width, std::uint64_t seed) {
  Image img(height, width, 3, ColorSpace::SRGB);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> dist(0.0f, 1.0f);
  for (float& v : img.data()) v = dist(rng);
  return img;
}

namespace {

EnhancementParams bench_params(const Image& lr, const PipelineConfig& cfg, std::uint64_t seed) {
  EnhancementParams p = heuristic_params(lr, cfg.basis_count, cfg.lut_bins);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<float> jitter(-0.05f, 0.05f);
  for (Lut3D& l : p.luts) {
    for (float& v : l.entries()) v = std::clamp(v + jitter(rng), 0.0f, 1.0f);
  }
  std::uniform_real_distribution<float> weight(0.1f, 0.6f);
  for (float& w : p.weight_points.weights) w = weight(rng);
  p.weight_maps = WeightMaps::uniform(lr.height(), lr.width(), p.weight_points.weights);
  p.param_maps.uniform = ConstantParams{0.8f, 1.2f};
  p.sigma_r = cfg.sigma_r;
  return p;
}

}  // namespace

BenchReport bench(const PipelineConfig& cfg, const std::vector<BenchSize>& sizes, int reps, std::uint64_t seed) {
  if (reps < 1) throw InvalidArgument("bench: reps must be >= 1");
  cfg.validate();
  BenchReport report;
  report.threads = thread_count();
  report.repetitions = reps;
  report.seed = seed;

  for (const BenchSize& size : sizes) {
    const Image img = synthetic_image(size.height, size.width, seed);
    const int n = adaptive_levels(size.height, size.width, cfg.target_low_res);
    Image lr = img;
    for (int k = 0; k < n; ++k) lr = downsample2(lr);
    const EnhancementParams params = bench_params(lr, cfg, seed);

    StageTimings t;
    EnhanceHooks hooks;
    hooks.timings = &t;
    (void)enhance(img, params, cfg, hooks);  // warm-up

    std::vector<double> lut, dec, ref, rec, tot;
    for (int r = 0; r < reps; ++r) {
      (void)enhance(img, params, cfg, hooks);
      lut.push_back(t.lut_apply);
      dec.push_back(t.decompose);
      ref.push_back(t.refine);
      rec.push_back(t.reconstruct);
      tot.push_back(t.total);
    }
    BenchEntry e;
    e.size = size;
    e.levels = n;
    e.lut_apply = summarize(lut);
    e.decompose = summarize(dec);
    e.refine = summarize(ref);
    e.reconstruct = summarize(rec);
    e.total = summarize(tot);
    e.total_samples = std::move(tot);
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace llflut
