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

#include <filesystem>
#include <stdexcept>
#include <string>

#include "llflut/image.hpp"

namespace llflut {

// On-disk encodings the engine reads and writes.
enum class FileKind {
  Png8,       // 8-bit PNG, gray or RGB
  Tiff8,      // 8-bit integer TIFF
  Tiff16,     // 16-bit integer TIFF
  TiffFloat,  // 32-bit IEEE float TIFF, any channel count, samples stored unclamped
};

class ImageIoError : public std::runtime_error {
 public:
  enum class Kind { Io, Malformed, UnsupportedBitDepth, UnsupportedFormat };

  ImageIoError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Picks the encoding from a file extension: .png -> Png8, .tif/.tiff -> Tiff16.
FileKind kind_for_path(const std::filesystem::path& path);

// Reads a PNG or TIFF, detected from the file signature. Integer samples are
// normalised by their full-scale value (255 or 65535). Integer 1- and 3-channel
// files are tagged Gray / SRGB; float TIFFs carry whatever the writer stored
// and are tagged by channel count the same way.
Image load_image(const std::filesystem::path& path);

// Integer encodings clamp to [0,1] and round to nearest. Png8 requires 1 or 3
// channels.
void save_image(const Image& img, const std::filesystem::path& path, FileKind kind);

}  // namespace llflut
