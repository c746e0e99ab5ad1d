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

#include "wmbench/watermark.hpp"

#include <algorithm>
#include <cmath>

#include "bytes.hpp"
#include "wmbench/error.hpp"
#include "wmbench/image_io.hpp"

namespace wmbench {

using detail::ByteReader;
using detail::ByteWriter;

std::string_view scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::kDwtDctSvd: return "dwtdctsvd";
    case SchemeId::kTreeRing: return "treering";
    case SchemeId::kGaussianShading: return "gaussianshading";
  }
  return "unknown";
}

SchemeId parse_scheme(std::string_view name) {
  if (name == "dwtdctsvd") return SchemeId::kDwtDctSvd;
  if (name == "treering") return SchemeId::kTreeRing;
  if (name == "gaussianshading") return SchemeId::kGaussianShading;
  fail(ErrorCode::kInvalidArgument, "unknown scheme '" + std::string(name) + "'");
}

std::string_view ring_pattern_name(RingPattern p) {
  switch (p) {
    case RingPattern::kRing: return "ring";
    case RingPattern::kRand: return "rand";
    case RingPattern::kZeros: return "zeros";
  }
  return "unknown";
}

RingPattern parse_ring_pattern(std::string_view name) {
  if (name == "ring") return RingPattern::kRing;
  if (name == "rand") return RingPattern::kRand;
  if (name == "zeros") return RingPattern::kZeros;
  fail(ErrorCode::kInvalidArgument, "unknown ring pattern '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Bits

WatermarkBits WatermarkBits::random(std::size_t length, Rng& rng) {
  require(length >= 1, "watermark payload must have at least one bit");
  WatermarkBits w;
  w.bits.resize(length);
  for (auto& b : w.bits) b = static_cast<std::uint8_t>(rng.next_u64() >> 63);
  return w;
}

std::vector<std::uint8_t> WatermarkBits::pack() const {
  require(!bits.empty(), "watermark payload must have at least one bit");
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(bits.size()));
  std::vector<std::uint8_t> packed((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) packed[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  w.bytes(packed);
  return std::move(w.data());
}

WatermarkBits WatermarkBits::unpack(std::span<const std::uint8_t> bytes, std::size_t& offset) {
  ByteReader r(bytes, offset);
  const std::uint32_t n = r.u32();
  if (n == 0) fail(ErrorCode::kCorrupt, "watermark payload has zero length");
  if (n > (1u << 24)) fail(ErrorCode::kCorrupt, "watermark payload length implausible");
  const auto packed = r.bytes((n + 7) / 8);
  WatermarkBits w;
  w.bits.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) w.bits[i] = (packed[i / 8] >> (7 - i % 8)) & 1u;
  offset = r.offset();
  return w;
}

// ---------------------------------------------------------------------------
// Keys

SchemeId WatermarkKey::scheme() const noexcept {
  switch (payload.index()) {
    case 0: return SchemeId::kDwtDctSvd;
    case 1: return SchemeId::kTreeRing;
    default: return SchemeId::kGaussianShading;
  }
}

namespace {

constexpr std::uint8_t kMagic[4] = {'W', 'M', 'K', '1'};

std::vector<std::uint8_t> payload_bytes(const KeyPayload& payload) {
  ByteWriter w;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DwtDctSvdPayload>) {
          w.f64(p.params.embed_strength);
          w.u8(static_cast<std::uint8_t>(p.params.subband));
          w.bytes(p.bits.pack());
        } else if constexpr (std::is_same_v<T, TreeRingPayload>) {
          w.u8(static_cast<std::uint8_t>(p.pattern));
          w.u8(p.target_channel);
          require(p.edges.size() >= 2 && p.edges.size() <= 255, "tree-ring key needs 2..255 ring edges");
          w.u8(static_cast<std::uint8_t>(p.edges.size()));
          for (double e : p.edges) w.f64(e);
        } else {
          w.bytes(p.cipher_key);
          w.bytes(p.nonce);
          w.f64(p.params.sigma);
          w.bytes(p.bits.pack());
        }
      },
      payload);
  return std::move(w.data());
}

KeyPayload parse_payload(SchemeId id, std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  std::size_t offset = 0;
  switch (id) {
    case SchemeId::kDwtDctSvd: {
      DwtDctSvdPayload p;
      p.params.embed_strength = r.f64();
      const std::uint8_t band = r.u8();
      if (band > 2) fail(ErrorCode::kCorrupt, "unknown subband id");
      p.params.subband = static_cast<Subband>(band);
      offset = r.offset();
      p.bits = WatermarkBits::unpack(bytes, offset);
      if (offset != bytes.size()) fail(ErrorCode::kCorrupt, "trailing bytes in dwtdctsvd payload");
      return p;
    }
    case SchemeId::kTreeRing: {
      TreeRingPayload p;
      const std::uint8_t pattern = r.u8();
      if (pattern > 2) fail(ErrorCode::kCorrupt, "unknown ring pattern id");
      p.pattern = static_cast<RingPattern>(pattern);
      p.target_channel = r.u8();
      const std::uint8_t n = r.u8();
      if (n < 2) fail(ErrorCode::kCorrupt, "tree-ring payload needs at least two edges");
      p.edges.resize(n);
      for (auto& e : p.edges) e = r.f64();
      if (r.remaining() != 0) fail(ErrorCode::kCorrupt, "trailing bytes in treering payload");
      return p;
    }
    case SchemeId::kGaussianShading: {
      GaussianShadingPayload p;
      auto key = r.bytes(32);
      std::copy(key.begin(), key.end(), p.cipher_key.begin());
      auto nonce = r.bytes(12);
      std::copy(nonce.begin(), nonce.end(), p.nonce.begin());
      p.params.sigma = r.f64();
      offset = r.offset();
      p.bits = WatermarkBits::unpack(bytes, offset);
      if (offset != bytes.size()) fail(ErrorCode::kCorrupt, "trailing bytes in gaussianshading payload");
      return p;
    }
  }
  fail(ErrorCode::kCorrupt, "unknown scheme id");
}

}  // namespace

std::vector<std::uint8_t> serialize_key(const WatermarkKey& key) {
  const auto payload = payload_bytes(key.payload);
  ByteWriter w;
  w.bytes(kMagic);
  w.u8(kKeyFileVersion);
  w.u8(static_cast<std::uint8_t>(key.scheme()));
  w.u64(key.seed.value);
  w.u32(static_cast<std::uint32_t>(payload.size()));
  w.bytes(payload);
  return std::move(w.data());
}

WatermarkKey deserialize_key(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) fail(ErrorCode::kTruncated, "key file shorter than its magic");
  if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin()))
    fail(ErrorCode::kBadMagic, "key file does not start with WMK1");
  ByteReader r(bytes, 4);
  const std::uint8_t version = r.u8();
  if (version != kKeyFileVersion)
    fail(ErrorCode::kUnsupportedVersion, "key file version " + std::to_string(version) + " is not supported");
  const std::uint8_t scheme = r.u8();
  if (scheme < 1 || scheme > 3) fail(ErrorCode::kCorrupt, "unknown scheme id " + std::to_string(scheme));
  WatermarkKey key;
  key.seed = Seed{r.u64()};
  const std::uint32_t length = r.u32();
  const auto payload = r.bytes(length);
  if (r.remaining() != 0) fail(ErrorCode::kCorrupt, "trailing bytes after key payload");
  key.payload = parse_payload(static_cast<SchemeId>(scheme), payload);
  return key;
}

void key_save(const WatermarkKey& key, const std::filesystem::path& path) { write_file(path, serialize_key(key)); }

WatermarkKey key_load(const std::filesystem::path& path) { return deserialize_key(read_file(path)); }

// ---------------------------------------------------------------------------
// Detection

DetectionOutcome decide(double statistic, double threshold) noexcept {
  return {statistic, threshold, statistic >= threshold};
}

Image Scheme::make_carrier(Seed) const {
  fail(ErrorCode::kInvalidArgument, std::string(scheme_name(id())) + " does not synthesize carriers");
}

DetectionOutcome Scheme::detect(const Image& img, std::optional<double> threshold) const {
  const std::optional<double> tau = threshold ? threshold : default_threshold_;
  if (!tau) fail(ErrorCode::kUncalibrated, "no threshold given and no calibration record installed");
  return decide(statistic(img), *tau);
}

}  // namespace wmbench
