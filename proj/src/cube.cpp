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

#include "llflut/cube.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "llflut/image_io.hpp"

namespace llflut {
namespace {

using Kind = CubeParseError::Kind;

constexpr int kMaxCubeSize = 256;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

float parse_float(std::string_view tok, int line) {
  float v = 0.0f;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    throw CubeParseError(Kind::MalformedNumber, line, "malformed number '" + std::string(tok) + "'");
  }
  return v;
}

std::array<float, 3> parse_triple(const std::vector<std::string_view>& toks, std::size_t from, int line) {
  if (toks.size() != from + 3) {
    throw CubeParseError(Kind::MalformedNumber, line,
                         "expected 3 values, found " + std::to_string(toks.size() - from));
  }
  return {parse_float(toks[from], line), parse_float(toks[from + 1], line), parse_float(toks[from + 2], line)};
}

bool is_data_line(std::string_view s) {
  const char c = s.front();
  return (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.';
}

}  // namespace

Lut3D parse_cube(std::string_view text) {
  std::optional<int> size;
  int size_line = 0;
  std::vector<float> values;
  int line_no = 0;
  int first_data_line = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string_view line = trim(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;

    if (is_data_line(line)) {
      if (!size) throw CubeParseError(Kind::MissingSize, line_no, "data before LUT_3D_SIZE");
      if (first_data_line == 0) first_data_line = line_no;
      const auto triple = parse_triple(split_ws(line), 0, line_no);
      values.insert(values.end(), triple.begin(), triple.end());
      continue;
    }

    const auto toks = split_ws(line);
    const std::string_view key = toks.front();
    if (key == "TITLE") continue;
    if (first_data_line != 0) {
      throw CubeParseError(Kind::Unsupported, line_no, "keyword '" + std::string(key) + "' after data");
    }
    if (key == "LUT_3D_SIZE") {
      if (size) throw CubeParseError(Kind::InvalidSize, line_no, "repeated LUT_3D_SIZE (first on line " + std::to_string(size_line) + ")");
      if (toks.size() != 2) throw CubeParseError(Kind::InvalidSize, line_no, "LUT_3D_SIZE takes one value");
      int n = 0;
      const auto [ptr, ec] = std::from_chars(toks[1].data(), toks[1].data() + toks[1].size(), n);
      if (ec != std::errc() || ptr != toks[1].data() + toks[1].size() || n < 2 || n > kMaxCubeSize) {
        throw CubeParseError(Kind::InvalidSize, line_no, "invalid LUT_3D_SIZE '" + std::string(toks[1]) + "'");
      }
      size = n;
      size_line = line_no;
    } else if (key == "DOMAIN_MIN" || key == "DOMAIN_MAX") {
      const float expected = key == "DOMAIN_MIN" ? 0.0f : 1.0f;
      const auto v = parse_triple(toks, 1, line_no);
      for (float d : v) {
        if (d != expected) {
          throw CubeParseError(Kind::NonUnitDomain, line_no,
                               std::string(key) + " must be " + (expected == 0.0f ? "0 0 0" : "1 1 1"));
        }
      }
    } else if (key == "LUT_1D_SIZE" || key == "LUT_1D_INPUT_RANGE") {
      throw CubeParseError(Kind::Unsupported, line_no, "1D LUTs are not supported");
    } else if (key == "LUT_3D_INPUT_RANGE") {
      if (toks.size() != 3 || parse_float(toks[1], line_no) != 0.0f ||
          parse_float(toks[2], line_no) != 1.0f) {
        throw CubeParseError(Kind::NonUnitDomain, line_no, "LUT_3D_INPUT_RANGE must be 0 1");
      }
    } else {
      throw CubeParseError(Kind::Unsupported, line_no, "unknown keyword '" + std::string(key) + "'");
    }
  }

  if (!size) throw CubeParseError(Kind::MissingSize, 0, "missing LUT_3D_SIZE");
  const std::size_t expected = static_cast<std::size_t>(*size) * *size * *size;
  const std::size_t found = values.size() / 3;
  if (found != expected) {
    throw CubeParseError(Kind::EntryCount, 0,
                         "expected " + std::to_string(expected) + " entries, found " + std::to_string(found));
  }
  return Lut3D(*size, std::move(values));
}

std::string write_cube(const Lut3D& lut, std::string_view title) {
  std::string out;
  if (!title.empty()) out += "TITLE \"" + std::string(title) + "\"\n";
  out += "LUT_3D_SIZE " + std::to_string(lut.n_bins()) + "\n";
  out += "DOMAIN_MIN 0 0 0\nDOMAIN_MAX 1 1 1\n";
  const auto e = lut.entries();
  char buf[96];
  for (std::size_t i = 0; i < e.size(); i += 3) {
    const int len = std::snprintf(buf, sizeof(buf), "%.7g %.7g %.7g\n", static_cast<double>(e[i]),
                                  static_cast<double>(e[i + 1]), static_cast<double>(e[i + 2]));
    out.append(buf, static_cast<std::size_t>(len));
  }
  return out;
}

Lut3D load_cube(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError(ImageIoError::Kind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_cube(ss.str());
}

void save_cube(const Lut3D& lut, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageIoError(ImageIoError::Kind::Io, "cannot open " + path.string() + " for writing");
  out << write_cube(lut);
  if (!out) throw ImageIoError(ImageIoError::Kind::Io, "write failed: " + path.string());
}

}  // namespace llflut
