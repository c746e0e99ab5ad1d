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

#include <utility>

#include "wmbench/latent.hpp"
#include "wmbench/watermark.hpp"

namespace wmbench {

// Replicas per payload bit: floor(4*64*64 / payload_len). Throws
// kInvalidArgument when the payload does not fit.
std::size_t gs_replication(std::size_t payload_len);

// W': position j carries bit (j mod len) for j < r*len, XORed with
// keystream bit j and mapped {0,1} -> {-1,+1}. Positions past r*len carry
// the keystream alone.
Latent gs_randomize(const GaussianShadingPayload& key);

// Inverse of gs_randomize on a sign tensor: XOR with the keystream, then a
// per-bit majority over the r replicas (ties decode as 0).
WatermarkBits gs_decrypt(const Latent& signs, const GaussianShadingPayload& key);

// z ~ N(0, 1) drawn from `seed`; z' = z + sigma * W'.
Latent gs_embed_latent(const GaussianShadingPayload& key, const Latent& z);
std::pair<Latent, Image> gs_embed(const GaussianShadingPayload& key, Seed seed, const LatentTransport& transport);

// Recovered payload from an image: invert, take signs about the per-channel
// median, decrypt.
WatermarkBits gs_extract(const GaussianShadingPayload& key, const Image& img, const LatentTransport& transport);

// Bit accuracy of gs_extract against the key's payload.
double gs_statistic(const GaussianShadingPayload& key, const Image& img, const LatentTransport& transport);

GaussianShadingPayload gs_key_generate(Seed seed, std::size_t payload_bits = kDefaultPayloadBits,
                                       ShadingParams params = {});

}  // namespace wmbench
