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

#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>

#include "wmbench/diffusion.hpp"
#include "wmbench/image.hpp"
#include "wmbench/random.hpp"

namespace wmbench {

class ServiceClient;

Image brightness(const Image& img, double factor);

// Rotation about the image centre, bilinear, out-of-frame pixels black.
// Positive angles turn the picture counter-clockwise as displayed.
Image rotate(const Image& img, double angle_degrees);

// JPEG modelled as its lossy core: 8-bit input, YCbCr (4:4:4), level shift,
// 8x8 DCT, quantization with the baseline tables scaled for `quality`,
// dequantization, inverse DCT, rounding back to 8 bits. No entropy coding.
Image jpeg_compress(const Image& img, int quality);

// Baseline table (natural order) scaled for quality in [1, 100].
std::array<int, 64> jpeg_quant_table(bool chroma, int quality);

Image gaussian_noise(const Image& img, double sigma, Seed seed);

enum class ParaphraseBackend { kSurrogate, kExternal };
std::string_view backend_name(ParaphraseBackend b);
ParaphraseBackend parse_backend(std::string_view name);

struct ParaphraseOutput {
  Image image;
  std::string caption;
};

inline constexpr const char* kSurrogateCaption = "surrogate";

// Schedule used by the surrogate: the default 50 linear steps with betas
// scaled down by 4 (2.5e-5 to 5e-3). The full-size schedule leaves too
// little of the input at s = 0.2 for low-amplitude watermarks to register.
inline constexpr double kSurrogateBetaStart = 2.5e-5;
inline constexpr double kSurrogateBetaEnd = 5e-3;
NoiseSchedule surrogate_schedule();

// Layout guide: bilinear-downsample to an 8x8 grid, bilinear back up, then the
// 5x5 sigma 1.5 blur. Carries composition and colour, not texture.
inline constexpr int kLayoutGrid = 8;
Image layout_guide(const Image& x);

// Works in the [-1, 1] domain: forward-noise to t* = round(s T), then run the
// ancestral reverse chain with GaussianPriorDenoiser. The guide is the layout
// guide of the input and the prior's detail sigma is the RMS of the input
// around it. s = 0 returns the input unchanged.
ParaphraseOutput surrogate_paraphrase(const Image& img, double strength, double guidance, Seed seed,
                                      const NoiseSchedule& schedule = surrogate_schedule());

// External backend requires `client`; errors surface as kTransport.
ParaphraseOutput visual_paraphrase(const Image& img, double strength, double guidance, ParaphraseBackend backend,
                                   Seed seed, const ServiceClient* client = nullptr);

enum class AttackKind { kNone, kBrightness, kRotation, kJpeg, kNoise, kStripMetadata, kParaphrase };
std::string_view attack_kind_name(AttackKind k);
AttackKind parse_attack_kind(std::string_view name);

struct AttackSpec {
  AttackKind kind = AttackKind::kNone;
  double factor = 2.0;
  double angle_degrees = 45.0;
  int quality = 50;
  double sigma = 0.05;
  double strength = 0.4;
  double guidance = 7.5;
  ParaphraseBackend backend = ParaphraseBackend::kSurrogate;
  Seed seed;

  // Throws kInvalidArgument on out-of-range parameters.
  void validate() const;
  // Parameter string for reports, e.g. "factor=2" or "s=0.4;gs=7.5".
  std::string params_label() const;
};

// Applies one attack. strip_metadata on a raster means an 8-bit PNG
// roundtrip through the stripper, which leaves pixels untouched.
ParaphraseOutput apply_attack(const AttackSpec& spec, const Image& img, const ServiceClient* client = nullptr);

}  // namespace wmbench
