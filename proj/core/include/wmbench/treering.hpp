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

#include <vector>

#include "wmbench/latent.hpp"
#include "wmbench/transforms.hpp"
#include "wmbench/watermark.hpp"

namespace wmbench {

// Three annuli between radii 4 and 14.
std::vector<double> default_ring_edges();

// Key material expanded from a TreeRingPayload. Spectra use the centered
// (fftshift-ed) layout of a 64x64 channel.
struct RingKey {
  TreeRingPayload descriptor;
  std::vector<std::uint8_t> mask;  // union of all annuli, row-major
  ComplexGrid values;              // target spectrum on masked bins, 0 elsewhere
  int masked_bins = 0;

  bool masked(int row, int col) const { return mask[static_cast<std::size_t>(row) * Latent::kSide + col] != 0; }
};

// Deterministic in (descriptor, seed). Ring values are real N(0, 64^2)
// draws, one per annulus; rand values are complex Gaussian per bin with the
// same total variance; zeros writes 0 on the disc [0, edges.back()). The
// target spectrum is Hermitian so the embedded channel stays real.
RingKey ring_key_generate(const TreeRingPayload& descriptor, Seed seed);

// Overwrites the masked bins of the target channel's spectrum and returns
// the real inverse. Everything outside the mask is left as it was.
Latent tr_embed_latent(const RingKey& key, const Latent& z);

// Mean over masked bins of |Re(F - K)| + |Im(F - K)|, F the centered
// spectrum of the target channel.
double tr_distance(const RingKey& key, const Latent& z);

// Negated distance of the inverted latent, so that higher means marked.
double tr_statistic(const RingKey& key, const Image& img, const LatentTransport& transport);

TreeRingPayload tr_key_generate(RingPattern pattern, std::vector<double> edges = default_ring_edges());

struct MixResult {
  Image image;
  double gamma = 0.0;
  double ssim = 1.0;
};

// Smallest gamma on {0, step, 2 step, ..., 1} such that
// SSIM(wm + gamma (orig - wm), orig) >= quality_floor.
MixResult adaptive_mix(const Image& watermarked, const Image& original, double quality_floor, double step);

}  // namespace wmbench
