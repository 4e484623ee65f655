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

#include "llflut/params.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <optional>
#include <utility>

#include "json.hpp"
#include "llflut/pyramid.hpp"

namespace llflut {
namespace {

using json = nlohmann::json;
using Kind = BundleError::Kind;

struct Violation {
  std::string field;
  std::string message;
};

bool all_finite(std::span<const float> v) {
  for (float x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

std::optional<Violation> check_constant(const ConstantParams& p, const std::string& field) {
  if (!std::isfinite(p.alpha) || !(p.alpha > 0.0f)) return Violation{field, "alpha must be positive and finite"};
  if (!std::isfinite(p.beta) || !(p.beta >= 0.0f)) return Violation{field, "beta must be non-negative and finite"};
  return std::nullopt;
}

std::optional<Violation> check_level(const LevelParams& lp, const std::string& field) {
  if (const auto* c = std::get_if<ConstantParams>(&lp)) return check_constant(*c, field);
  const auto& m = std::get<ParamMaps>(lp);
  if (m.alpha.empty() || m.beta.empty()) return Violation{field, "empty parameter map"};
  if (!m.alpha.same_shape(m.beta)) return Violation{field, "alpha and beta maps differ in shape"};
  if (m.alpha.channels() != 1 && m.alpha.channels() != 3) return Violation{field, "maps must have 1 or 3 channels"};
  for (float a : m.alpha.data()) {
    if (!std::isfinite(a) || !(a > 0.0f)) return Violation{field, "alpha map must be positive and finite"};
  }
  for (float b : m.beta.data()) {
    if (!std::isfinite(b) || !(b >= 0.0f)) return Violation{field, "beta map must be non-negative and finite"};
  }
  return std::nullopt;
}

std::optional<Violation> first_violation(const EnhancementParams& p) {
  const std::size_t t = p.luts.size();
  if (t == 0) return Violation{"luts", "at least one basis LUT is required"};
  for (const Lut3D& l : p.luts) {
    if (l.n_bins() != p.luts.front().n_bins()) return Violation{"luts", "basis LUTs differ in lattice size"};
    if (l.n_bins() < 2) return Violation{"luts", "lattice size must be >= 2"};
    if (!all_finite(l.entries())) return Violation{"luts", "non-finite entry"};
  }
  if (p.weight_points.size() != t) {
    return Violation{"weight_points", std::to_string(p.weight_points.size()) + " weights for " + std::to_string(t) + " LUTs"};
  }
  if (!all_finite(p.weight_points.weights)) return Violation{"weight_points", "non-finite weight"};
  if (p.weight_maps.size() != t) {
    return Violation{"weight_maps", std::to_string(p.weight_maps.size()) + " maps for " + std::to_string(t) + " LUTs"};
  }
  try {
    p.weight_maps.validate();
  } catch (const InvalidArgument& e) {
    return Violation{"weight_maps", e.what()};
  }
  if (!std::isfinite(p.sigma_r) || !(p.sigma_r > 0.0f)) return Violation{"sigma_r", "must be positive and finite"};
  if (!std::holds_alternative<ConstantParams>(p.param_maps.uniform)) {
    return Violation{"param_maps", "the uniform rule must be constant"};
  }
  if (auto v = check_level(p.param_maps.uniform, "param_maps.uniform")) return v;
  for (std::size_t k = 0; k < p.param_maps.levels.size(); ++k) {
    if (auto v = check_level(p.param_maps.levels[k], "param_maps.level_" + std::to_string(k))) return v;
  }
  return std::nullopt;
}

// ---- little-endian float payload ----

void append_floats(std::vector<std::uint8_t>& out, std::span<const float> values) {
  const std::size_t at = out.size();
  out.resize(at + values.size() * 4);
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::uint32_t bits = std::bit_cast<std::uint32_t>(values[i]);
    for (int b = 0; b < 4; ++b) out[at + i * 4 + b] = static_cast<std::uint8_t>(bits >> (8 * b));
  }
}

class PayloadReader {
 public:
  explicit PayloadReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::vector<float> take(const std::string& field, std::size_t count) {
    const std::size_t need = count * 4;
    if (bytes_.size() - pos_ < need) {
      throw BundleError(Kind::Truncated, field,
                        "payload ends after " + std::to_string((bytes_.size() - pos_) / 4) + " of " +
                            std::to_string(count) + " values");
    }
    std::vector<float> out(count);
    for (std::size_t i = 0; i < count; ++i) {
      std::uint32_t bits = 0;
      for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(bytes_[pos_ + i * 4 + b]) << (8 * b);
      out[i] = std::bit_cast<float>(bits);
    }
    pos_ += need;
    return out;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

struct ArraySpec {
  std::string name;
  std::size_t count;
};

std::size_t image_count(const Image& img) { return img.size(); }

template <typename T>
T manifest_get(const json& m, const char* key) {
  if (!m.contains(key)) throw BundleError(Kind::Manifest, key, "missing from manifest");
  try {
    return m.at(key).get<T>();
  } catch (const json::exception& e) {
    throw BundleError(Kind::Manifest, key, std::string("bad value: ") + e.what());
  }
}

Image image_from(std::vector<float> values, int h, int w, int c, ColorSpace space) {
  Image img(h, w, c, space);
  std::copy(values.begin(), values.end(), img.data().begin());
  return img;
}

}  // namespace

void EnhancementParams::validate() const {
  if (auto v = first_violation(*this)) throw InvalidArgument("params field '" + v->field + "': " + v->message);
}

EnhancementParams heuristic_params(const Image& lr, int basis_count, int n_bins) {
  if (basis_count < 1) throw InvalidArgument("heuristic_params: basis count must be >= 1");
  EnhancementParams p;
  const Lut3D identity = identity_lut(n_bins);
  p.luts.assign(basis_count, identity);
  p.weight_points.weights.assign(basis_count, 0.0f);
  p.weight_points.weights[0] = 1.0f;
  p.weight_maps = WeightMaps::uniform(lr.height(), lr.width(), p.weight_points.weights);
  p.param_maps.uniform = ConstantParams{1.0f, 1.0f};
  p.sigma_r = kDefaultSigmaR;
  return p;
}

std::vector<std::uint8_t> serialize_bundle(const EnhancementParams& params) {
  if (auto v = first_violation(params)) throw BundleError(Kind::InvalidValue, v->field, v->message);
  const int t = params.basis_count();
  const int nb = params.luts.front().n_bins();

  json manifest;
  manifest["format"] = "LLFP1";
  manifest["T"] = t;
  manifest["n_bins"] = nb;
  manifest["lr_height"] = params.weight_maps.height();
  manifest["lr_width"] = params.weight_maps.width();
  manifest["sigma_r"] = static_cast<double>(params.sigma_r);
  manifest["gaussian_conditioning"] = params.gaussian_conditioning;

  std::vector<ArraySpec> arrays;
  arrays.push_back({"luts", static_cast<std::size_t>(t) * params.luts.front().entries().size()});
  arrays.push_back({"weight_points", static_cast<std::size_t>(t)});
  arrays.push_back({"weight_maps", static_cast<std::size_t>(t) * params.weight_maps.maps.front().size()});

  const auto& pm = params.param_maps;
  if (pm.levels.empty()) {
    const auto& u = std::get<ConstantParams>(pm.uniform);
    manifest["param_rule"] = "uniform";
    manifest["uniform"] = {{"alpha", static_cast<double>(u.alpha)}, {"beta", static_cast<double>(u.beta)}};
  } else {
    manifest["param_rule"] = "per_level";
    json levels = json::array();
    for (int k = static_cast<int>(pm.levels.size()) - 1; k >= 0; --k) {
      const LevelParams& lp = pm.levels[k];
      if (const auto* c = std::get_if<ConstantParams>(&lp)) {
        levels.push_back({{"level", k}, {"kind", "constant"}, {"alpha", static_cast<double>(c->alpha)},
                          {"beta", static_cast<double>(c->beta)}});
      } else {
        const auto& m = std::get<ParamMaps>(lp);
        levels.push_back({{"level", k}, {"kind", "map"}, {"height", m.alpha.height()},
                          {"width", m.alpha.width()}, {"channels", m.alpha.channels()}});
        arrays.push_back({"alpha_" + std::to_string(k), image_count(m.alpha)});
        arrays.push_back({"beta_" + std::to_string(k), image_count(m.beta)});
      }
    }
    manifest["levels"] = levels;
  }
  json array_list = json::array();
  for (const auto& a : arrays) array_list.push_back({{"name", a.name}, {"count", a.count}});
  manifest["arrays"] = array_list;

  const std::string text = manifest.dump();
  std::vector<std::uint8_t> out(kBundleMagic.begin(), kBundleMagic.end());
  const auto len = static_cast<std::uint32_t>(text.size());
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(len >> (8 * b)));
  out.insert(out.end(), text.begin(), text.end());

  for (const Lut3D& l : params.luts) append_floats(out, l.entries());
  append_floats(out, params.weight_points.weights);
  for (const Image& m : params.weight_maps.maps) append_floats(out, m.data());
  for (int k = static_cast<int>(pm.levels.size()) - 1; k >= 0; --k) {
    if (const auto* m = std::get_if<ParamMaps>(&pm.levels[k])) {
      append_floats(out, m->alpha.data());
      append_floats(out, m->beta.data());
    }
  }
  return out;
}

EnhancementParams deserialize_bundle(std::span<const std::uint8_t> bytes) {
  const std::size_t header = kBundleMagic.size() + 4;
  if (bytes.size() < kBundleMagic.size() ||
      std::memcmp(bytes.data(), kBundleMagic.data(), kBundleMagic.size()) != 0) {
    throw BundleError(Kind::BadMagic, "magic", "expected \"LLFP1\\n\"");
  }
  if (bytes.size() < header) throw BundleError(Kind::Truncated, "manifest_length", "file ends inside the header");
  std::uint32_t len = 0;
  for (int b = 0; b < 4; ++b) len |= static_cast<std::uint32_t>(bytes[kBundleMagic.size() + b]) << (8 * b);
  if (bytes.size() - header < len) {
    throw BundleError(Kind::Truncated, "manifest",
                      "declares " + std::to_string(len) + " bytes, " + std::to_string(bytes.size() - header) + " present");
  }

  json m;
  try {
    m = json::parse(bytes.begin() + header, bytes.begin() + header + len);
  } catch (const json::exception& e) {
    throw BundleError(Kind::Manifest, "manifest", std::string("invalid JSON: ") + e.what());
  }
  if (!m.is_object()) throw BundleError(Kind::Manifest, "manifest", "must be a JSON object");
  if (manifest_get<std::string>(m, "format") != "LLFP1") throw BundleError(Kind::Manifest, "format", "expected LLFP1");

  const int t = manifest_get<int>(m, "T");
  const int nb = manifest_get<int>(m, "n_bins");
  const int lr_h = manifest_get<int>(m, "lr_height");
  const int lr_w = manifest_get<int>(m, "lr_width");
  if (t < 1) throw BundleError(Kind::InvalidValue, "T", "must be >= 1");
  if (nb < 2 || nb > 256) throw BundleError(Kind::InvalidValue, "n_bins", "must be in [2, 256]");
  if (lr_h < 1 || lr_w < 1) throw BundleError(Kind::InvalidValue, "lr_height", "low-resolution size must be positive");

  EnhancementParams p;
  p.sigma_r = static_cast<float>(manifest_get<double>(m, "sigma_r"));
  p.gaussian_conditioning = manifest_get<bool>(m, "gaussian_conditioning");

  // Expected arrays from the manifest's own fields.
  std::vector<ArraySpec> expected;
  const std::size_t lut_values = static_cast<std::size_t>(nb) * nb * nb * 3;
  expected.push_back({"luts", static_cast<std::size_t>(t) * lut_values});
  expected.push_back({"weight_points", static_cast<std::size_t>(t)});
  expected.push_back({"weight_maps", static_cast<std::size_t>(t) * lr_h * lr_w});

  struct MapLevel {
    int level, h, w, c;
  };
  std::vector<MapLevel> map_levels;
  const auto rule = manifest_get<std::string>(m, "param_rule");
  if (rule == "uniform") {
    const json u = manifest_get<json>(m, "uniform");
    p.param_maps.uniform = ConstantParams{static_cast<float>(manifest_get<double>(u, "alpha")),
                                          static_cast<float>(manifest_get<double>(u, "beta"))};
  } else if (rule == "per_level") {
    const json levels = manifest_get<json>(m, "levels");
    if (!levels.is_array() || levels.empty()) throw BundleError(Kind::Manifest, "levels", "must be a non-empty array");
    const int depth = static_cast<int>(levels.size());
    p.param_maps.levels.resize(depth);
    std::vector<bool> seen(depth, false);
    for (const json& entry : levels) {
      const int k = manifest_get<int>(entry, "level");
      if (k < 0 || k >= depth || seen[k]) throw BundleError(Kind::Manifest, "levels", "bad or repeated level index");
      seen[k] = true;
      const auto kind = manifest_get<std::string>(entry, "kind");
      if (kind == "constant") {
        p.param_maps.levels[k] = ConstantParams{static_cast<float>(manifest_get<double>(entry, "alpha")),
                                                static_cast<float>(manifest_get<double>(entry, "beta"))};
      } else if (kind == "map") {
        MapLevel ml{k, manifest_get<int>(entry, "height"), manifest_get<int>(entry, "width"),
                    manifest_get<int>(entry, "channels")};
        if (ml.h < 1 || ml.w < 1 || (ml.c != 1 && ml.c != 3)) {
          throw BundleError(Kind::InvalidValue, "levels", "bad map geometry at level " + std::to_string(k));
        }
        const std::size_t count = static_cast<std::size_t>(ml.h) * ml.w * ml.c;
        expected.push_back({"alpha_" + std::to_string(k), count});
        expected.push_back({"beta_" + std::to_string(k), count});
        map_levels.push_back(ml);
      } else {
        throw BundleError(Kind::Manifest, "levels", "unknown kind '" + kind + "'");
      }
    }
  } else {
    throw BundleError(Kind::Manifest, "param_rule", "expected 'uniform' or 'per_level'");
  }

  const json arrays = manifest_get<json>(m, "arrays");
  if (!arrays.is_array()) throw BundleError(Kind::Manifest, "arrays", "must be an array");
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const std::string& name = expected[i].name;
    if (i >= arrays.size()) throw BundleError(Kind::SizeMismatch, name, "array missing from manifest list");
    if (manifest_get<std::string>(arrays[i], "name") != name) {
      throw BundleError(Kind::SizeMismatch, name, "manifest lists arrays out of order");
    }
    const auto declared = manifest_get<std::size_t>(arrays[i], "count");
    if (declared != expected[i].count) {
      throw BundleError(Kind::SizeMismatch, name,
                        "manifest declares " + std::to_string(declared) + " values, its fields imply " +
                            std::to_string(expected[i].count));
    }
  }
  if (arrays.size() != expected.size()) throw BundleError(Kind::SizeMismatch, "arrays", "unexpected extra arrays");

  PayloadReader reader(bytes.subspan(header + len));
  {
    auto all = reader.take("luts", expected[0].count);
    for (int i = 0; i < t; ++i) {
      std::vector<float> one(all.begin() + static_cast<std::ptrdiff_t>(i * lut_values),
                             all.begin() + static_cast<std::ptrdiff_t>((i + 1) * lut_values));
      if (!all_finite(one)) throw BundleError(Kind::InvalidValue, "luts", "non-finite entry");
      p.luts.emplace_back(nb, std::move(one));
    }
  }
  p.weight_points.weights = reader.take("weight_points", t);
  {
    auto all = reader.take("weight_maps", expected[2].count);
    const std::size_t per = static_cast<std::size_t>(lr_h) * lr_w;
    for (int i = 0; i < t; ++i) {
      std::vector<float> one(all.begin() + static_cast<std::ptrdiff_t>(i * per),
                             all.begin() + static_cast<std::ptrdiff_t>((i + 1) * per));
      p.weight_maps.maps.push_back(image_from(std::move(one), lr_h, lr_w, 1, ColorSpace::Gray));
    }
  }
  for (const MapLevel& ml : map_levels) {
    const std::size_t count = static_cast<std::size_t>(ml.h) * ml.w * ml.c;
    ParamMaps maps;
    maps.alpha = image_from(reader.take("alpha_" + std::to_string(ml.level), count), ml.h, ml.w, ml.c, ColorSpace::Gray);
    maps.beta = image_from(reader.take("beta_" + std::to_string(ml.level), count), ml.h, ml.w, ml.c, ColorSpace::Gray);
    p.param_maps.levels[ml.level] = std::move(maps);
  }
  if (reader.remaining() != 0) {
    throw BundleError(Kind::SizeMismatch, "payload", std::to_string(reader.remaining()) + " trailing bytes");
  }
  if (auto v = first_violation(p)) throw BundleError(Kind::InvalidValue, v->field, v->message);
  return p;
}

void save_bundle(const EnhancementParams& params, const std::filesystem::path& path) {
  const auto bytes = serialize_bundle(params);
  if (path.empty()) throw BundleError(Kind::Io, "path", "empty output path");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw BundleError(Kind::Io, "path", "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw BundleError(Kind::Io, "path", "write failed: " + path.string());
}

EnhancementParams load_bundle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BundleError(Kind::Io, "path", "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_bundle(bytes);
}

// ---- conditioning ----

namespace {

Image expand_to(const Image& src, const Image& like) {
  if (src.same_dims(like)) return src;
  return upsample2(src, like.height(), like.width());
}

void require_channels(const Image& img, int channels, const char* role) {
  if (img.channels() != channels) {
    throw InvalidArgument(std::string("conditioning: ") + role + " needs " + std::to_string(channels) +
                          " channels, got " + std::to_string(img.channels()));
  }
}

void require_same_dims(const Image& img, const Image& band, const char* role) {
  if (!img.same_dims(band)) {
    throw InvalidArgument(std::string("conditioning: ") + role + " must match the band dimensions");
  }
}

}  // namespace

ConditioningStack assemble_coarsest_conditioning(int level, const Image& band, const Image& residual,
                                                 const Image& refined_lr, const Image& edge_map,
                                                 const Image& gauss, bool include_gaussian) {
  require_channels(band, 3, "band");
  require_channels(residual, 3, "residual");
  require_channels(refined_lr, 3, "refined LR image");
  require_channels(edge_map, 1, "edge map");
  if (!residual.same_dims(refined_lr) || !residual.same_dims(edge_map)) {
    throw InvalidArgument("conditioning: residual, refined LR image and edge map must share dimensions");
  }
  const Image up_res = expand_to(residual, band);
  const Image up_lr = expand_to(refined_lr, band);
  const Image up_edge = expand_to(edge_map, band);

  ConditioningStack out;
  out.level = level;
  out.layout = {{"band", 3}, {"up_residual", 3}, {"up_refined_lr", 3}, {"up_edge", 1}};
  std::vector<const Image*> parts = {&band, &up_res, &up_lr, &up_edge};
  if (include_gaussian) {
    require_channels(gauss, 3, "Gaussian level");
    require_same_dims(gauss, band, "Gaussian level");
    parts.push_back(&gauss);
    out.layout.push_back({"gaussian", 3});
  }
  out.stack = concat_channels(parts);
  return out;
}

ConditioningStack assemble_interior_conditioning(int level, const Image& band, const Image& refined_coarser,
                                                 const Image& gauss, bool include_gaussian) {
  require_channels(band, 3, "band");
  require_channels(refined_coarser, 3, "refined coarser band");
  const Image up_refined = expand_to(refined_coarser, band);

  ConditioningStack out;
  out.level = level;
  out.layout = {{"band", 3}, {"up_refined", 3}};
  std::vector<const Image*> parts = {&band, &up_refined};
  if (include_gaussian) {
    require_channels(gauss, 3, "Gaussian level");
    require_same_dims(gauss, band, "Gaussian level");
    parts.push_back(&gauss);
    out.layout.push_back({"gaussian", 3});
  }
  out.stack = concat_channels(parts);
  return out;
}

}  // namespace llflut
