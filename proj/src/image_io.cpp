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

#include "llflut/image_io.hpp"

#include <png.h>
#include <tiffio.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

namespace llflut {
namespace fs = std::filesystem;
namespace {

using Kind = ImageIoError::Kind;

thread_local std::string t_tiff_message;

void tiff_error_handler(const char* module, const char* fmt, va_list ap) {
  char buf[512];
  std::vsnprintf(buf, sizeof(buf), fmt, ap);
  t_tiff_message = module ? std::string(module) + ": " + buf : std::string(buf);
}

void tiff_warning_handler(const char*, const char*, va_list) {}

void install_tiff_handlers() {
  static const bool installed = [] {
    TIFFSetErrorHandler(tiff_error_handler);
    TIFFSetWarningHandler(tiff_warning_handler);
    return true;
  }();
  (void)installed;
}

struct TiffCloser {
  void operator()(TIFF* t) const { TIFFClose(t); }
};
using TiffPtr = std::unique_ptr<TIFF, TiffCloser>;

ColorSpace default_space(int channels) {
  return channels == 3 ? ColorSpace::SRGB : ColorSpace::Gray;
}

std::uint16_t quantize16(float v) {
  return static_cast<std::uint16_t>(std::lround(std::clamp(v, 0.0f, 1.0f) * 65535.0f));
}

std::uint8_t quantize8(float v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0f, 1.0f) * 255.0f));
}

Image load_tiff(const fs::path& path) {
  install_tiff_handlers();
  t_tiff_message.clear();
  TiffPtr tif(TIFFOpen(path.c_str(), "r"));
  if (!tif) throw ImageIoError(Kind::Malformed, "cannot parse TIFF " + path.string() + ": " + t_tiff_message);

  std::uint32_t width = 0, height = 0;
  std::uint16_t spp = 1, bps = 0, format = SAMPLEFORMAT_UINT, planar = PLANARCONFIG_CONTIG;
  if (!TIFFGetField(tif.get(), TIFFTAG_IMAGEWIDTH, &width) ||
      !TIFFGetField(tif.get(), TIFFTAG_IMAGELENGTH, &height)) {
    throw ImageIoError(Kind::Malformed, "TIFF missing image dimensions: " + path.string());
  }
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_SAMPLESPERPIXEL, &spp);
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_BITSPERSAMPLE, &bps);
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_SAMPLEFORMAT, &format);
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_PLANARCONFIG, &planar);
  if (TIFFIsTiled(tif.get())) {
    throw ImageIoError(Kind::UnsupportedFormat, "tiled TIFF is not supported: " + path.string());
  }
  if (width == 0 || height == 0 || spp == 0) {
    throw ImageIoError(Kind::Malformed, "TIFF has empty dimensions: " + path.string());
  }

  const bool is_float = format == SAMPLEFORMAT_IEEEFP;
  if (is_float ? bps != 32 : (format != SAMPLEFORMAT_UINT || (bps != 8 && bps != 16))) {
    throw ImageIoError(Kind::UnsupportedBitDepth,
                       "unsupported TIFF sample layout (" + std::to_string(bps) + "-bit, format " +
                           std::to_string(format) + "): " + path.string());
  }

  const int h = static_cast<int>(height), w = static_cast<int>(width), c = spp;
  Image img(h, w, c, default_space(c));
  std::vector<std::uint8_t> line(TIFFScanlineSize(tif.get()));
  const double scale = bps == 8 ? 1.0 / 255.0 : 1.0 / 65535.0;

  auto decode = [&](const std::uint8_t* src, std::size_t idx) -> float {
    if (is_float) {
      float f;
      std::memcpy(&f, src + idx * 4, 4);
      return f;
    }
    if (bps == 16) {
      std::uint16_t v;
      std::memcpy(&v, src + idx * 2, 2);
      return static_cast<float>(v * scale);
    }
    return static_cast<float>(src[idx] * scale);
  };

  const int passes = planar == PLANARCONFIG_SEPARATE ? c : 1;
  for (int s = 0; s < passes; ++s) {
    for (int y = 0; y < h; ++y) {
      if (TIFFReadScanline(tif.get(), line.data(), y, static_cast<std::uint16_t>(s)) < 0) {
        throw ImageIoError(Kind::Malformed, "TIFF read failed at row " + std::to_string(y) +
                                                ": " + t_tiff_message);
      }
      if (passes == 1) {
        for (int ch = 0; ch < c; ++ch) {
          float* dst = img.row(ch, y);
          for (int x = 0; x < w; ++x) dst[x] = decode(line.data(), static_cast<std::size_t>(x) * c + ch);
        }
      } else {
        float* dst = img.row(s, y);
        for (int x = 0; x < w; ++x) dst[x] = decode(line.data(), x);
      }
    }
  }
  return img;
}

void save_tiff(const Image& img, const fs::path& path, FileKind kind) {
  install_tiff_handlers();
  t_tiff_message.clear();
  TiffPtr tif(TIFFOpen(path.c_str(), "w"));
  if (!tif) throw ImageIoError(Kind::Io, "cannot open " + path.string() + " for writing: " + t_tiff_message);

  const int c = img.channels(), h = img.height(), w = img.width();
  const std::uint16_t bps = kind == FileKind::Tiff8 ? 8 : kind == FileKind::Tiff16 ? 16 : 32;
  TIFFSetField(tif.get(), TIFFTAG_IMAGEWIDTH, static_cast<std::uint32_t>(w));
  TIFFSetField(tif.get(), TIFFTAG_IMAGELENGTH, static_cast<std::uint32_t>(h));
  TIFFSetField(tif.get(), TIFFTAG_SAMPLESPERPIXEL, static_cast<std::uint16_t>(c));
  TIFFSetField(tif.get(), TIFFTAG_BITSPERSAMPLE, bps);
  TIFFSetField(tif.get(), TIFFTAG_SAMPLEFORMAT,
               kind == FileKind::TiffFloat ? SAMPLEFORMAT_IEEEFP : SAMPLEFORMAT_UINT);
  TIFFSetField(tif.get(), TIFFTAG_PLANARCONFIG, PLANARCONFIG_CONTIG);
  TIFFSetField(tif.get(), TIFFTAG_COMPRESSION, COMPRESSION_NONE);
  TIFFSetField(tif.get(), TIFFTAG_ORIENTATION, ORIENTATION_TOPLEFT);
  TIFFSetField(tif.get(), TIFFTAG_ROWSPERSTRIP, static_cast<std::uint32_t>(1));
  const bool rgb = c == 3;
  TIFFSetField(tif.get(), TIFFTAG_PHOTOMETRIC, rgb ? PHOTOMETRIC_RGB : PHOTOMETRIC_MINISBLACK);
  const int base = rgb ? 3 : 1;
  if (c > base) {
    std::vector<std::uint16_t> extra(c - base, EXTRASAMPLE_UNSPECIFIED);
    TIFFSetField(tif.get(), TIFFTAG_EXTRASAMPLES, static_cast<std::uint16_t>(extra.size()), extra.data());
  }

  const std::size_t bytes = bps / 8;
  std::vector<std::uint8_t> line(static_cast<std::size_t>(w) * c * bytes);
  for (int y = 0; y < h; ++y) {
    for (int ch = 0; ch < c; ++ch) {
      const float* src = img.row(ch, y);
      for (int x = 0; x < w; ++x) {
        const std::size_t idx = static_cast<std::size_t>(x) * c + ch;
        if (kind == FileKind::TiffFloat) {
          std::memcpy(line.data() + idx * 4, &src[x], 4);
        } else if (kind == FileKind::Tiff16) {
          const std::uint16_t v = quantize16(src[x]);
          std::memcpy(line.data() + idx * 2, &v, 2);
        } else {
          line[idx] = quantize8(src[x]);
        }
      }
    }
    if (TIFFWriteScanline(tif.get(), line.data(), static_cast<std::uint32_t>(y), 0) < 0) {
      throw ImageIoError(Kind::Io, "TIFF write failed: " + t_tiff_message);
    }
  }
  if (!TIFFFlush(tif.get())) throw ImageIoError(Kind::Io, "TIFF flush failed: " + path.string());
}

Image load_png(const fs::path& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str())) {
    const std::string msg = png.message;
    png_image_free(&png);
    throw ImageIoError(Kind::Malformed, "cannot parse PNG " + path.string() + ": " + msg);
  }
  if (png.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&png);
    throw ImageIoError(Kind::UnsupportedBitDepth, "only 8-bit PNG is supported: " + path.string());
  }
  const bool color = png.format & PNG_FORMAT_FLAG_COLOR;
  png.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const int c = color ? 3 : 1;
  const int w = static_cast<int>(png.width), h = static_cast<int>(png.height);
  std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, buf.data(), 0, nullptr)) {
    const std::string msg = png.message;
    png_image_free(&png);
    throw ImageIoError(Kind::Malformed, "PNG decode failed " + path.string() + ": " + msg);
  }
  Image img(h, w, c, default_space(c));
  for (int ch = 0; ch < c; ++ch) {
    for (int y = 0; y < h; ++y) {
      float* dst = img.row(ch, y);
      const std::uint8_t* src = buf.data() + static_cast<std::size_t>(y) * w * c;
      for (int x = 0; x < w; ++x) dst[x] = src[x * c + ch] / 255.0f;
    }
  }
  return img;
}

void save_png(const Image& img, const fs::path& path) {
  const int c = img.channels();
  if (c != 1 && c != 3) {
    throw ImageIoError(Kind::UnsupportedFormat, "PNG output needs 1 or 3 channels, got " + std::to_string(c));
  }
  const int w = img.width(), h = img.height();
  std::vector<std::uint8_t> buf(static_cast<std::size_t>(w) * h * c);
  for (int ch = 0; ch < c; ++ch) {
    for (int y = 0; y < h; ++y) {
      const float* src = img.row(ch, y);
      std::uint8_t* dst = buf.data() + static_cast<std::size_t>(y) * w * c;
      for (int x = 0; x < w; ++x) dst[x * c + ch] = quantize8(src[x]);
    }
  }
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(w);
  png.height = static_cast<png_uint_32>(h);
  png.format = c == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&png, path.c_str(), 0, buf.data(), 0, nullptr)) {
    const std::string msg = png.message;
    png_image_free(&png);
    throw ImageIoError(Kind::Io, "cannot write PNG " + path.string() + ": " + msg);
  }
}

}  // namespace

FileKind kind_for_path(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (ext == ".png") return FileKind::Png8;
  if (ext == ".tif" || ext == ".tiff") return FileKind::Tiff16;
  throw ImageIoError(Kind::UnsupportedFormat, "unrecognised image extension: " + path.string());
}

Image load_image(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError(Kind::Io, "cannot open " + path.string());
  std::array<unsigned char, 8> sig{};
  in.read(reinterpret_cast<char*>(sig.data()), sig.size());
  const auto got = in.gcount();
  in.close();

  static constexpr std::array<unsigned char, 8> kPng = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (got == 8 && sig == kPng) return load_png(path);
  if (got >= 4 && ((sig[0] == 'I' && sig[1] == 'I' && sig[2] == 42 && sig[3] == 0) ||
                   (sig[0] == 'M' && sig[1] == 'M' && sig[2] == 0 && sig[3] == 42))) {
    return load_tiff(path);
  }
  throw ImageIoError(got < 4 ? Kind::Malformed : Kind::UnsupportedFormat,
                     "not a PNG or TIFF file: " + path.string());
}

void save_image(const Image& img, const fs::path& path, FileKind kind) {
  if (img.empty()) throw InvalidArgument("save_image: empty image");
  if (path.empty()) throw ImageIoError(Kind::Io, "save_image: empty output path");
  if (kind == FileKind::Png8) {
    save_png(img, path);
  } else {
    save_tiff(img, path, kind);
  }
}

}  // namespace llflut
