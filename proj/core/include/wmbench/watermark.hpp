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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wmbench/image.hpp"
#include "wmbench/random.hpp"

namespace wmbench {

enum class SchemeId : std::uint8_t {
  kDwtDctSvd = 1,
  kTreeRing = 2,
  kGaussianShading = 3,
};

std::string_view scheme_name(SchemeId id);
// Accepts "dwtdctsvd", "treering", "gaussianshading".
SchemeId parse_scheme(std::string_view name);

// Ordered bit payload. Serialized as a u32 little-endian bit count followed
// by the bits packed MSB-first.
struct WatermarkBits {
  std::vector<std::uint8_t> bits;

  static WatermarkBits random(std::size_t length, Rng& rng);

  std::size_t size() const noexcept { return bits.size(); }
  std::vector<std::uint8_t> pack() const;
  // Reads one serialized payload starting at `offset` and advances it.
  static WatermarkBits unpack(std::span<const std::uint8_t> bytes, std::size_t& offset);

  friend bool operator==(const WatermarkBits&, const WatermarkBits&) = default;
};

inline constexpr std::size_t kDefaultPayloadBits = 64;

// ---------------------------------------------------------------------------
// Scheme payloads

enum class Subband : std::uint8_t { kLL = 0, kHL = 1, kLH = 2 };

struct DwtDctSvdParams {
  // Lattice step relative to the local LL mean (see dwtdctsvd.hpp).
  // Tuned against the PSNR >= 35 dB gate on 256px natural-statistics images.
  double embed_strength = 0.05;
  Subband subband = Subband::kLL;

  friend bool operator==(const DwtDctSvdParams&, const DwtDctSvdParams&) = default;
};

struct DwtDctSvdPayload {
  WatermarkBits bits;
  DwtDctSvdParams params;

  friend bool operator==(const DwtDctSvdPayload&, const DwtDctSvdPayload&) = default;
};

enum class RingPattern : std::uint8_t { kRing = 0, kRand = 1, kZeros = 2 };

std::string_view ring_pattern_name(RingPattern p);
RingPattern parse_ring_pattern(std::string_view name);

struct TreeRingPayload {
  RingPattern pattern = RingPattern::kRing;
  // Consecutive pairs define annuli [edges[i], edges[i+1]). The zeros
  // pattern uses a single disc [0, edges.back()).
  std::vector<double> edges;
  std::uint8_t target_channel = 3;

  friend bool operator==(const TreeRingPayload&, const TreeRingPayload&) = default;
};

struct ShadingParams {
  // Small enough that the clean mark decodes at >= 0.99 bit accuracy.
  double sigma = 0.2;

  friend bool operator==(const ShadingParams&, const ShadingParams&) = default;
};

struct GaussianShadingPayload {
  std::array<std::uint8_t, 32> cipher_key{};
  std::array<std::uint8_t, 12> nonce{};
  WatermarkBits bits;
  ShadingParams params;

  friend bool operator==(const GaussianShadingPayload&, const GaussianShadingPayload&) = default;
};

using KeyPayload = std::variant<DwtDctSvdPayload, TreeRingPayload, GaussianShadingPayload>;

struct WatermarkKey {
  Seed seed;
  KeyPayload payload;

  SchemeId scheme() const noexcept;

  friend bool operator==(const WatermarkKey&, const WatermarkKey&) = default;
};

// Key file: "WMK1" | version u8 = 1 | scheme_id u8 | seed u64 LE |
// payload length u32 LE | payload bytes.
inline constexpr std::uint8_t kKeyFileVersion = 1;

std::vector<std::uint8_t> serialize_key(const WatermarkKey& key);
// Errors: kBadMagic, kUnsupportedVersion, kTruncated, kCorrupt.
WatermarkKey deserialize_key(std::span<const std::uint8_t> bytes);

void key_save(const WatermarkKey& key, const std::filesystem::path& path);
WatermarkKey key_load(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Detection

struct DetectionOutcome {
  double statistic = 0.0;
  double threshold = 0.0;
  bool detected = false;
};

// detected <=> statistic >= threshold.
DetectionOutcome decide(double statistic, double threshold) noexcept;

// Encoder/decoder pair behind a single threshold rule. Statistics are
// oriented so that larger values mean more watermark evidence.
class Scheme {
 public:
  virtual ~Scheme() = default;

  virtual SchemeId id() const = 0;

  // X_w = E(X, w). Output has the input's shape.
  virtual Image embed(const Image& img) const = 0;
  virtual double statistic(const Image& img) const = 0;

  // Schemes that watermark a generation latent rather than an existing
  // picture produce their own unwatermarked carriers.
  virtual bool latent_based() const { return false; }
  virtual Image make_carrier(Seed seed) const;

  // Uses `threshold` when given, else the default installed from a
  // calibration record; throws kUncalibrated when neither exists.
  DetectionOutcome detect(const Image& img, std::optional<double> threshold = std::nullopt) const;

  void set_default_threshold(std::optional<double> tau) { default_threshold_ = tau; }
  std::optional<double> default_threshold() const { return default_threshold_; }

 private:
  std::optional<double> default_threshold_;
};

}  // namespace wmbench
