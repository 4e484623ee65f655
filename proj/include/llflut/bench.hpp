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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "llflut/pipeline.hpp"

namespace llflut {

struct BenchSize {
  int height;
  int width;
  std::string label;

  std::int64_t pixels() const { return static_cast<std::int64_t>(height) * width; }
};

// Median and 95th percentile of a set of samples, milliseconds.
struct Summary {
  double median = 0.0;
  double p95 = 0.0;
  double min = 0.0;
  double max = 0.0;
};

Summary summarize(std::vector<double> samples);

struct BenchEntry {
  BenchSize size;
  int levels = 0;
  Summary lut_apply, decompose, refine, reconstruct, total;
  std::vector<double> total_samples;
};

struct BenchReport {
  int threads = 1;
  int repetitions = 0;
  std::uint64_t seed = 0;
  std::vector<BenchEntry> entries;
};

// Parses "480p", "1080p", "4k", or "<h>x<w>".
BenchSize parse_bench_size(const std::string& token);

// Uniform random RGB image in [0,1].
Image synthetic_image(int height, int width, std::uint64_t seed);

// Times enhance on one synthetic image per size: one warm-up call, then
// `reps` measured calls with a monotonic clock. The parameters are a
// non-trivial constant-rule configuration (random weights, alpha 0.8,
// beta 1.2) so every stage does representative work.
BenchReport bench(const PipelineConfig& cfg, const std::vector<BenchSize>& sizes, int reps, std::uint64_t seed);

}  // namespace llflut
