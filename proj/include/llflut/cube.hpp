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
#include <string_view>

#include "llflut/lut3d.hpp"

namespace llflut {

class CubeParseError : public std::runtime_error {
 public:
  enum class Kind {
    MissingSize,     // no LUT_3D_SIZE line
    InvalidSize,     // size out of range or repeated
    EntryCount,      // data line count differs from size^3
    NonUnitDomain,   // DOMAIN_MIN / DOMAIN_MAX other than 0 / 1
    MalformedNumber, // unparsable or non-finite float, or wrong field count
    Unsupported,     // 1D LUT sections and unknown keywords
  };

  CubeParseError(Kind kind, int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        kind_(kind),
        line_(line) {}

  Kind kind() const { return kind_; }
  // 1-based; 0 when the error is not tied to a line (end-of-file checks).
  int line() const { return line_; }

 private:
  Kind kind_;
  int line_;
};

// Parses Adobe/IRIDAS `.cube` text: TITLE, comments, LUT_3D_SIZE, optional
// unit DOMAIN_MIN/DOMAIN_MAX, then size^3 "r g b" lines with red fastest.
Lut3D parse_cube(std::string_view text);

// Writes entries with 7 significant digits.
std::string write_cube(const Lut3D& lut, std::string_view title = {});

Lut3D load_cube(const std::filesystem::path& path);
void save_cube(const Lut3D& lut, const std::filesystem::path& path);

}  // namespace llflut
