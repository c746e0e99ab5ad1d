// Copyright 2026 The wmbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wmbench/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "wmbench/color.hpp"
#include "wmbench/error.hpp"
#include "wmbench/image_io.hpp"
#include "wmbench/metadata.hpp"
#include "wmbench/paraphrase_client.hpp"
#include "wmbench/transforms.hpp"

namespace wmbench {

Image brightness(const Image& img, double factor) {
  require(factor > 0.0 && std::isfinite(factor), "brightness factor must be positive");
  Image out = img;
  for (double& v : out.data) v *= factor;
  clamp_unit(out);
  return out;
}

Image rotate(const Image& img, double angle_degrees) {
  require(std::isfinite(angle_degrees), "rotation angle must be finite");
  validate(img);
  if (std::fmod(angle_degrees, 360.0) == 0.0) return img;
  const double th = angle_degrees * std::numbers::pi / 180.0;
  const double c = std::cos(th), s = std::sin(th);
  const double cx = 0.5 * (img.width - 1), cy = 0.5 * (img.height - 1);
  Image out(img.width, img.height, img.channels, 0.0);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      // Inverse map; with y pointing down, this turns the content
      // counter-clockwise on screen for positive angles.
      const double dx = x - cx, dy = y - cy;
      const double sx = cx + c * dx - s * dy;
      const double sy = cy + s * dx + c * dy;
      if (sx < 0.0 || sy < 0.0 || sx > img.width - 1 || sy > img.height - 1) continue;
      const int x0 = static_cast<int>(std::floor(sx)), y0 = static_cast<int>(std::floor(sy));
      const int x1 = std::min(x0 + 1, img.width - 1), y1 = std::min(y0 + 1, img.height - 1);
      const double fx = sx - x0, fy = sy - y0;
      for (int ch = 0; ch < img.channels; ++ch) {
        const double top = (1 - fx) * img.at(ch, y0, x0) + fx * img.at(ch, y0, x1);
        const double bot = (1 - fx) * img.at(ch, y1, x0) + fx * img.at(ch, y1, x1);
        out.at(ch, y, x) = (1 - fy) * top + fy * bot;
      }
    }
  clamp_unit(out);
  return out;
}

namespace {

constexpr std::array<int, 64> kLumaBase = {
    16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,
    14, 13, 16, 24, 40,  57,  69,  56,  14, 17, 22, 29, 51,  87,  80,  62,
    18, 22, 37, 56, 68,  109, 103, 77,  24, 35, 55, 64, 81,  104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99};
constexpr std::array<int, 64> kChromaBase = {
    17, 18, 24, 47, 99, 99, 99, 99, 18, 21, 26, 66, 99, 99, 99, 99, 24, 26, 56, 99, 99, 99,
    99, 99, 47, 66, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99,
    99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99};

// One plane on the 0..255 scale, edge-padded to whole blocks.
void jpeg_cycle_plane(std::span<double> plane, int w, int h, const std::array<int, 64>& q) {
  const int bw = (w + 7) / 8, bh = (h + 7) / 8;
  Grid block(8, 8);
  for (int by = 0; by < bh; ++by)
    for (int bx = 0; bx < bw; ++bx) {
      for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) {
          const int sy = std::min(by * 8 + y, h - 1), sx = std::min(bx * 8 + x, w - 1);
          block(y, x) = plane[static_cast<std::size_t>(sy) * w + sx] - 128.0;
        }
      Grid coeffs = dct2_block(block);
      for (int i = 0; i < 64; ++i) {
        double& v = coeffs.data()[i];
        v = std::round(v / q[i]) * q[i];
      }
      const Grid back = idct2_block(coeffs);
      for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) {
          const int sy = by * 8 + y, sx = bx * 8 + x;
          if (sy < h && sx < w) plane[static_cast<std::size_t>(sy) * w + sx] = back(y, x) + 128.0;
        }
    }
}

}  // namespace

std::array<int, 64> jpeg_quant_table(bool chroma, int quality) {
  require(quality >= 1 && quality <= 100, "JPEG quality must be in [1, 100]");
  const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
  const auto& base = chroma ? kChromaBase : kLumaBase;
  std::array<int, 64> q{};
  for (int i = 0; i < 64; ++i) q[i] = std::clamp((base[i] * scale + 50) / 100, 1, 255);
  return q;
}

Image jpeg_compress(const Image& img, int quality) {
  validate(img);
  const auto ql = jpeg_quant_table(false, quality);
  const auto qc = jpeg_quant_table(true, quality);
  Image work = img;
  for (double& v : work.data) v = quantize_8bit(v);
  if (work.channels == 3) {
    for (double& v : work.data) v /= 255.0;
    work = rgb_to_yuv(work);
    for (double& v : work.data) v *= 255.0;
  }
  // JPEG centres chroma on 128; our colour transform puts it on 127.5.
  const double chroma_shift = work.channels == 3 ? 0.5 : 0.0;
  for (int c = 0; c < work.channels; ++c) {
    const double shift = c == 0 ? 0.0 : chroma_shift;
    auto plane = work.plane(c);
    for (double& v : plane) v += shift;
    jpeg_cycle_plane(plane, work.width, work.height, c == 0 ? ql : qc);
    for (double& v : plane) v -= shift;
  }
  for (double& v : work.data) v /= 255.0;
  if (work.channels == 3) work = yuv_to_rgb(work);
  // Decoders emit bytes.
  for (double& v : work.data) v = quantize_8bit(std::clamp(v, 0.0, 1.0)) / 255.0;
  return work;
}

Image gaussian_noise(const Image& img, double sigma, Seed seed) {
  require(sigma >= 0.0 && std::isfinite(sigma), "noise sigma must be non-negative");
  if (sigma == 0.0) return img;
  Image out = img;
  Rng rng(seed);
  for (double& v : out.data) v += sigma * rng.normal();
  clamp_unit(out);
  return out;
}

std::string_view backend_name(ParaphraseBackend b) {
  return b == ParaphraseBackend::kSurrogate ? "surrogate" : "external";
}

ParaphraseBackend parse_backend(std::string_view name) {
  if (name == "surrogate") return ParaphraseBackend::kSurrogate;
  if (name == "external") return ParaphraseBackend::kExternal;
  fail(ErrorCode::kInvalidArgument, "unknown paraphrase backend '" + std::string(name) + "'");
}

NoiseSchedule surrogate_schedule() {
  return NoiseSchedule::linear(NoiseSchedule::kDefaultSteps, kSurrogateBetaStart, kSurrogateBetaEnd);
}

Image layout_guide(const Image& x) {
  validate(x);
  const Image coarse = resize_bilinear(x, std::min(kLayoutGrid, x.width), std::min(kLayoutGrid, x.height));
  return gaussian_blur(resize_bilinear(coarse, x.width, x.height), GuidePullDenoiser::kBlurSigma,
                       GuidePullDenoiser::kBlurRadius);
}

ParaphraseOutput surrogate_paraphrase(const Image& img, double strength, double guidance, Seed seed,
                                      const NoiseSchedule& schedule) {
  require(strength >= 0.0 && strength <= 1.0, "paraphrase strength must be in [0, 1]");
  require(guidance >= 0.0 && std::isfinite(guidance), "guidance scale must be non-negative");
  validate(img);
  const int t_star = static_cast<int>(std::lround(strength * schedule.steps()));
  if (t_star == 0) return {img, kSurrogateCaption};

  Image x = img;
  for (double& v : x.data) v = 2.0 * v - 1.0;
  const Image guide = layout_guide(x);
  double ss = 0.0;
  for (std::size_t i = 0; i < x.data.size(); ++i) ss += (x.data[i] - guide.data[i]) * (x.data[i] - guide.data[i]);
  const GaussianPriorDenoiser denoiser(std::sqrt(ss / static_cast<double>(x.data.size())));

  for (int t = 1; t <= t_star; ++t) x = forward_step(x, t, schedule, derive_seed(seed, {static_cast<std::uint64_t>(t)}));
  // Reverse noise draws live in their own seed lane.
  for (int t = t_star; t >= 1; --t)
    x = ancestral_step(x, t, denoiser, &guide, guidance, schedule, derive_seed(seed, {0x726576, static_cast<std::uint64_t>(t)}));
  for (double& v : x.data) v = 0.5 * (v + 1.0);
  clamp_unit(x);
  return {std::move(x), kSurrogateCaption};
}

ParaphraseOutput visual_paraphrase(const Image& img, double strength, double guidance, ParaphraseBackend backend,
                                   Seed seed, const ServiceClient* client) {
  require(strength >= 0.0 && strength <= 1.0, "paraphrase strength must be in [0, 1]");
  if (backend == ParaphraseBackend::kSurrogate) return surrogate_paraphrase(img, strength, guidance, seed);
  if (client == nullptr) fail(ErrorCode::kTransport, "external paraphrase backend needs a service URL");
  ParaphraseRequest req;
  req.strength = strength;
  req.guidance_scale = guidance;
  req.steps = NoiseSchedule::kDefaultSteps;
  req.seed = seed.value;
  ParaphraseResult r = client->paraphrase(img, req);
  // Services may return another size or channel count; bring it back to the
  // input geometry so detectors see a comparable raster.
  Image out = img.channels == 3 ? to_rgb(r.image) : to_gray(r.image);
  if (out.width != img.width || out.height != img.height) out = resize_bilinear(out, img.width, img.height);
  clamp_unit(out);
  return {std::move(out), std::move(r.caption)};
}

std::string_view attack_kind_name(AttackKind k) {
  switch (k) {
    case AttackKind::kNone: return "none";
    case AttackKind::kBrightness: return "brightness";
    case AttackKind::kRotation: return "rotation";
    case AttackKind::kJpeg: return "jpeg";
    case AttackKind::kNoise: return "noise";
    case AttackKind::kStripMetadata: return "strip_metadata";
    case AttackKind::kParaphrase: return "paraphrase";
  }
  return "unknown";
}

AttackKind parse_attack_kind(std::string_view name) {
  for (auto k : {AttackKind::kNone, AttackKind::kBrightness, AttackKind::kRotation, AttackKind::kJpeg,
                 AttackKind::kNoise, AttackKind::kStripMetadata, AttackKind::kParaphrase})
    if (attack_kind_name(k) == name) return k;
  if (name == "strip-metadata") return AttackKind::kStripMetadata;
  fail(ErrorCode::kInvalidArgument, "unknown attack kind '" + std::string(name) + "'");
}

void AttackSpec::validate() const {
  switch (kind) {
    case AttackKind::kBrightness:
      require(factor > 0.0 && std::isfinite(factor), "brightness factor must be positive");
      break;
    case AttackKind::kRotation: require(std::isfinite(angle_degrees), "rotation angle must be finite"); break;
    case AttackKind::kJpeg: require(quality >= 1 && quality <= 100, "JPEG quality must be in [1, 100]"); break;
    case AttackKind::kNoise: require(sigma >= 0.0 && std::isfinite(sigma), "noise sigma must be non-negative"); break;
    case AttackKind::kParaphrase:
      require(strength >= 0.0 && strength <= 1.0, "paraphrase strength must be in [0, 1]");
      require(guidance >= 0.0 && std::isfinite(guidance), "guidance scale must be non-negative");
      break;
    case AttackKind::kNone:
    case AttackKind::kStripMetadata: break;
  }
}

std::string AttackSpec::params_label() const {
  switch (kind) {
    case AttackKind::kBrightness: return fmt::format("factor={:g}", factor);
    case AttackKind::kRotation: return fmt::format("angle={:g}", angle_degrees);
    case AttackKind::kJpeg: return fmt::format("quality={}", quality);
    case AttackKind::kNoise: return fmt::format("sigma={:g}", sigma);
    case AttackKind::kParaphrase:
      return fmt::format("s={:g};gs={:g};backend={}", strength, guidance, backend_name(backend));
    case AttackKind::kNone:
    case AttackKind::kStripMetadata: break;
  }
  return "";
}

ParaphraseOutput apply_attack(const AttackSpec& spec, const Image& img, const ServiceClient* client) {
  spec.validate();
  switch (spec.kind) {
    case AttackKind::kNone: return {img, ""};
    case AttackKind::kBrightness: return {brightness(img, spec.factor), ""};
    case AttackKind::kRotation: return {rotate(img, spec.angle_degrees), ""};
    case AttackKind::kJpeg: return {jpeg_compress(img, spec.quality), ""};
    case AttackKind::kNoise: return {gaussian_noise(img, spec.sigma, spec.seed), ""};
    case AttackKind::kStripMetadata: {
      const auto stripped = strip_metadata(encode_png(img));
      return {decode_image(stripped.bytes), ""};
    }
    case AttackKind::kParaphrase:
      return visual_paraphrase(img, spec.strength, spec.guidance, spec.backend, spec.seed, client);
  }
  return {img, ""};
}

}  // namespace wmbench
