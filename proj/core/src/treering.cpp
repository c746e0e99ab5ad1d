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

#include "wmbench/treering.hpp"

#include <cmath>

#include "wmbench/error.hpp"
#include "wmbench/metrics.hpp"

namespace wmbench {
namespace {

constexpr int kN = Latent::kSide;
// Std of an FFT bin of a unit-variance 64x64 field.
constexpr double kBinScale = 64.0;

// Centered index of the conjugate-symmetric partner.
int partner(int i) { return (kN - i) % kN; }

void check_descriptor(const TreeRingPayload& d) {
  require(d.edges.size() >= 2, "tree-ring key needs at least two ring edges");
  require(d.target_channel < Latent::kChannels, "tree-ring target channel out of range");
  for (std::size_t i = 0; i + 1 < d.edges.size(); ++i)
    require(d.edges[i] < d.edges[i + 1], "ring edges must be strictly increasing");
  require(d.edges.front() >= 0.0 && d.edges.back() <= kN / 2, "ring edges must lie in [0, 32]");
}

}  // namespace

std::vector<double> default_ring_edges() { return {4.0, 22.0 / 3.0, 32.0 / 3.0, 14.0}; }

TreeRingPayload tr_key_generate(RingPattern pattern, std::vector<double> edges) {
  TreeRingPayload p;
  p.pattern = pattern;
  p.edges = std::move(edges);
  check_descriptor(p);
  return p;
}

RingKey ring_key_generate(const TreeRingPayload& descriptor, Seed seed) {
  check_descriptor(descriptor);
  RingKey key;
  key.descriptor = descriptor;
  key.mask.assign(static_cast<std::size_t>(kN) * kN, 0);
  key.values = ComplexGrid(kN, kN);
  Rng rng(seed);

  const auto& e = descriptor.edges;
  if (descriptor.pattern == RingPattern::kZeros) {
    const RingMask disc = make_ring_mask(kN, 0.0, e.back());
    key.mask = disc.mask;
  } else {
    for (std::size_t r = 0; r + 1 < e.size(); ++r) {
      const RingMask ring = make_ring_mask(kN, e[r], e[r + 1]);
      const double constant = kBinScale * rng.normal();
      for (int u = 0; u < kN; ++u)
        for (int v = 0; v < kN; ++v) {
          if (!ring.at(u, v)) continue;
          key.mask[static_cast<std::size_t>(u) * kN + v] = 1;
          if (descriptor.pattern == RingPattern::kRing) key.values.set(u, v, constant);
        }
    }
    if (descriptor.pattern == RingPattern::kRand) {
      // Draw in raster order, then copy conjugates onto the later partner so
      // the spectrum is Hermitian.
      const double s = kBinScale / std::sqrt(2.0);
      for (int u = 0; u < kN; ++u)
        for (int v = 0; v < kN; ++v) {
          if (!key.masked(u, v)) continue;
          const int pu = partner(u), pv = partner(v);
          const long idx = static_cast<long>(u) * kN + v, pidx = static_cast<long>(pu) * kN + pv;
          if (pidx < idx) {
            key.values.set(u, v, std::conj(key.values.at(pu, pv)));
          } else if (pidx == idx) {
            key.values.set(u, v, kBinScale * rng.normal());
          } else {
            const double re = s * rng.normal();
            const double im = s * rng.normal();
            key.values.set(u, v, {re, im});
          }
        }
    }
  }
  for (auto m : key.mask) key.masked_bins += m;
  return key;
}

Latent tr_embed_latent(const RingKey& key, const Latent& z) {
  validate(z);
  const int c = key.descriptor.target_channel;
  ComplexGrid spec = fftshift(fft2(z.channel(c)));
  for (int u = 0; u < kN; ++u)
    for (int v = 0; v < kN; ++v)
      if (key.masked(u, v)) spec.set(u, v, key.values.at(u, v));
  const ComplexGrid back = ifft2(ifftshift(spec));
  Latent out = z;
  out.set_channel(c, back.real);
  return out;
}

double tr_distance(const RingKey& key, const Latent& z) {
  validate(z);
  const ComplexGrid spec = fftshift(fft2(z.channel(key.descriptor.target_channel)));
  double sum = 0.0;
  for (int u = 0; u < kN; ++u)
    for (int v = 0; v < kN; ++v)
      if (key.masked(u, v))
        sum += std::abs(spec.real(u, v) - key.values.real(u, v)) + std::abs(spec.imag(u, v) - key.values.imag(u, v));
  return sum / key.masked_bins;
}

double tr_statistic(const RingKey& key, const Image& img, const LatentTransport& transport) {
  return -tr_distance(key, transport.invert(img));
}

MixResult adaptive_mix(const Image& watermarked, const Image& original, double quality_floor, double step) {
  require(watermarked.same_shape(original), "adaptive_mix: shape mismatch");
  require(quality_floor > 0.0 && quality_floor < 1.0, "adaptive_mix: quality floor must be in (0, 1)");
  require(step > 0.0 && step <= 1.0, "adaptive_mix: step must be in (0, 1]");
  const int n = static_cast<int>(std::ceil(1.0 / step - 1e-9));
  for (int i = 0; i <= n; ++i) {
    const double gamma = std::min(1.0, i * step);
    MixResult r;
    r.gamma = gamma;
    if (gamma >= 1.0) {
      r.image = original;
    } else {
      r.image = watermarked;
      for (std::size_t k = 0; k < r.image.data.size(); ++k)
        r.image.data[k] += gamma * (original.data[k] - watermarked.data[k]);
    }
    r.ssim = ssim(r.image, original);
    if (r.ssim >= quality_floor) return r;
  }
  // Unreachable: gamma = 1 reproduces the original.
  return {original, 1.0, 1.0};
}

}  // namespace wmbench
