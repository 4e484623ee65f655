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

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace llflut {

enum class ColorSpace { LinearRGB, SRGB, CIEXYZ, CIELAB, Gray };

std::string_view to_string(ColorSpace space);

// Raised for precondition violations on arguments (sizes, tags, ranges).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Planar floating-point raster. Sample (c, y, x) lives at
// data[(c * height + y) * width + x]. Images with three channels are RGB-like,
// single-channel images are masks or gray, and wider stacks are used for
// predictor conditioning tensors.
class Image {
 public:
  Image() = default;
  Image(int height, int width, int channels, ColorSpace space, float fill = 0.0f);

  static Image constant(int height, int width, int channels, ColorSpace space, float value) {
    return Image(height, width, channels, space, value);
  }

  int height() const { return height_; }
  int width() const { return width_; }
  int channels() const { return channels_; }
  ColorSpace space() const { return space_; }
  void set_space(ColorSpace space) { space_ = space; }
  bool empty() const { return data_.empty(); }

  std::size_t pixel_count() const { return static_cast<std::size_t>(height_) * width_; }
  std::size_t size() const { return data_.size(); }

  float& at(int c, int y, int x) { return data_[index(c, y, x)]; }
  float at(int c, int y, int x) const { return data_[index(c, y, x)]; }

  std::span<float> plane(int c) {
    return {data_.data() + static_cast<std::size_t>(c) * pixel_count(), pixel_count()};
  }
  std::span<const float> plane(int c) const {
    return {data_.data() + static_cast<std::size_t>(c) * pixel_count(), pixel_count()};
  }
  float* row(int c, int y) { return data_.data() + index(c, y, 0); }
  const float* row(int c, int y) const { return data_.data() + index(c, y, 0); }

  std::span<float> data() { return data_; }
  std::span<const float> data() const { return data_; }

  bool same_shape(const Image& other) const {
    return height_ == other.height_ && width_ == other.width_ && channels_ == other.channels_;
  }
  bool same_dims(const Image& other) const {
    return height_ == other.height_ && width_ == other.width_;
  }

  // Single-channel copy of plane c.
  Image channel(int c) const;

  friend bool operator==(const Image& a, const Image& b) {
    return a.same_shape(b) && a.space_ == b.space_ && a.data_ == b.data_;
  }

 private:
  std::size_t index(int c, int y, int x) const {
    return (static_cast<std::size_t>(c) * height_ + y) * width_ + x;
  }

  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  ColorSpace space_ = ColorSpace::Gray;
  std::vector<float> data_;
};

// Largest absolute per-sample difference. Shapes must match.
double max_abs_diff(const Image& a, const Image& b);

// Clamps every sample into [lo, hi].
Image clamp(Image img, float lo = 0.0f, float hi = 1.0f);

// Bilinear resampling with half-pixel-centred sample positions and edge
// clamping. Channel count and color space are preserved.
Image resize_bilinear(const Image& img, int out_h, int out_w);

// Stacks the channels of each input, in order, into one image. All inputs must
// share height and width. The result carries the first input's color space.
Image concat_channels(std::span<const Image* const> parts);

}  // namespace llflut
