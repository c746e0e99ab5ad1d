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

#include "wmbench/gaussian_shading.hpp"

#include <algorithm>
#include <cmath>

#include "wmbench/chacha20.hpp"
#include "wmbench/error.hpp"
#include "wmbench/metrics.hpp"

namespace wmbench {
namespace {

std::vector<std::uint8_t> keystream_bits(const GaussianShadingPayload& key) {
  const auto bytes = chacha20_keystream(key.cipher_key, key.nonce, 0, Latent::kSize / 8);
  std::vector<std::uint8_t> bits(Latent::kSize);
  for (std::size_t j = 0; j < bits.size(); ++j) bits[j] = (bytes[j / 8] >> (7 - j % 8)) & 1u;
  return bits;
}

}  // namespace

std::size_t gs_replication(std::size_t payload_len) {
  require(payload_len >= 1, "payload must have at least one bit");
  const std::size_t r = Latent::kSize / payload_len;
  if (r < 1) fail(ErrorCode::kInvalidArgument, "payload longer than the latent");
  return r;
}

Latent gs_randomize(const GaussianShadingPayload& key) {
  const std::size_t len = key.bits.size();
  const std::size_t used = gs_replication(len) * len;
  const auto ks = keystream_bits(key);
  Latent w;
  for (std::size_t j = 0; j < Latent::kSize; ++j) {
    const std::uint8_t b = j < used ? key.bits.bits[j % len] : 0;
    w.data[j] = (b ^ ks[j]) ? 1.0 : -1.0;
  }
  return w;
}

WatermarkBits gs_decrypt(const Latent& signs, const GaussianShadingPayload& key) {
  const std::size_t len = key.bits.size();
  const std::size_t used = gs_replication(len) * len;
  const auto ks = keystream_bits(key);
  std::vector<long> votes(len, 0);
  for (std::size_t j = 0; j < used; ++j) {
    const std::uint8_t s = signs.data[j] > 0.0 ? 1 : 0;
    votes[j % len] += (s ^ ks[j]) ? 1 : -1;
  }
  WatermarkBits out;
  out.bits.resize(len);
  for (std::size_t i = 0; i < len; ++i) out.bits[i] = votes[i] > 0 ? 1 : 0;
  return out;
}

Latent gs_embed_latent(const GaussianShadingPayload& key, const Latent& z) {
  validate(z);
  require(key.params.sigma >= 0.0 && std::isfinite(key.params.sigma), "sigma must be non-negative");
  const Latent w = gs_randomize(key);
  Latent out = z;
  for (std::size_t j = 0; j < Latent::kSize; ++j) out.data[j] += key.params.sigma * w.data[j];
  return out;
}

std::pair<Latent, Image> gs_embed(const GaussianShadingPayload& key, Seed seed, const LatentTransport& transport) {
  Latent zp = gs_embed_latent(key, Latent::gaussian(seed));
  Image img = transport.generate(zp);
  return {std::move(zp), std::move(img)};
}

WatermarkBits gs_extract(const GaussianShadingPayload& key, const Image& img, const LatentTransport& transport) {
  Latent z = transport.invert(img);
  // Centering on the median makes the sign decision invariant to any
  // increasing affine change of the latent, e.g. a global gain or offset.
  std::vector<double> scratch(Latent::kPlane);
  for (int c = 0; c < Latent::kChannels; ++c) {
    auto first = z.data.begin() + static_cast<std::ptrdiff_t>(c * Latent::kPlane);
    std::copy_n(first, Latent::kPlane, scratch.begin());
    auto mid = scratch.begin() + static_cast<std::ptrdiff_t>(Latent::kPlane / 2);
    std::nth_element(scratch.begin(), mid, scratch.end());
    const double hi = *mid;
    const double lo = *std::max_element(scratch.begin(), mid);
    const double median = 0.5 * (lo + hi);
    std::for_each(first, first + static_cast<std::ptrdiff_t>(Latent::kPlane), [&](double& v) { v -= median; });
  }
  return gs_decrypt(z, key);
}

double gs_statistic(const GaussianShadingPayload& key, const Image& img, const LatentTransport& transport) {
  return bit_accuracy(gs_extract(key, img, transport), key.bits);
}

GaussianShadingPayload gs_key_generate(Seed seed, std::size_t payload_bits, ShadingParams params) {
  require(params.sigma > 0.0, "sigma must be positive");
  gs_replication(payload_bits);
  Rng rng(seed);
  GaussianShadingPayload key;
  for (auto& b : key.cipher_key) b = static_cast<std::uint8_t>(rng.next_u64());
  for (auto& b : key.nonce) b = static_cast<std::uint8_t>(rng.next_u64());
  key.bits = WatermarkBits::random(payload_bits, rng);
  key.params = params;
  return key;
}

}  // namespace wmbench
