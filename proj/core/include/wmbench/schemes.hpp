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

#include <memory>
#include <optional>
#include <vector>

#include "wmbench/dwtdctsvd.hpp"
#include "wmbench/gaussian_shading.hpp"
#include "wmbench/latent.hpp"
#include "wmbench/treering.hpp"
#include "wmbench/watermark.hpp"

namespace wmbench {

class DwtDctSvdScheme : public Scheme {
 public:
  explicit DwtDctSvdScheme(DwtDctSvdPayload key) : key_(std::move(key)) {}
  SchemeId id() const override { return SchemeId::kDwtDctSvd; }
  Image embed(const Image& img) const override { return dds_embed(key_.bits, img, key_.params); }
  double statistic(const Image& img) const override { return dds_statistic(key_, img); }

 private:
  DwtDctSvdPayload key_;
};

// Latent schemes. embed() of an arbitrary image goes through the transport:
// generate(mark(invert(img))). make_carrier() renders a fresh N(0, I) latent.
class LatentScheme : public Scheme {
 public:
  explicit LatentScheme(std::shared_ptr<const LatentTransport> transport);
  bool latent_based() const override { return true; }
  Image make_carrier(Seed seed) const override;
  Image embed(const Image& img) const override;
  virtual Latent mark(const Latent& z) const = 0;
  const LatentTransport& transport() const { return *transport_; }

 private:
  std::shared_ptr<const LatentTransport> transport_;
};

class TreeRingScheme : public LatentScheme {
 public:
  TreeRingScheme(const TreeRingPayload& payload, Seed seed, std::shared_ptr<const LatentTransport> transport);
  SchemeId id() const override { return SchemeId::kTreeRing; }
  Latent mark(const Latent& z) const override { return tr_embed_latent(key_, z); }
  double statistic(const Image& img) const override { return tr_statistic(key_, img, transport()); }
  const RingKey& ring_key() const { return key_; }

 private:
  RingKey key_;
};

class GaussianShadingScheme : public LatentScheme {
 public:
  GaussianShadingScheme(GaussianShadingPayload key, std::shared_ptr<const LatentTransport> transport);
  SchemeId id() const override { return SchemeId::kGaussianShading; }
  Latent mark(const Latent& z) const override { return gs_embed_latent(key_, z); }
  double statistic(const Image& img) const override { return gs_statistic(key_, img, transport()); }

 private:
  GaussianShadingPayload key_;
};

// Builds the scheme matching the key's payload. Latent schemes need a
// transport; a null one selects the identity transport.
std::unique_ptr<Scheme> make_scheme(const WatermarkKey& key,
                                    std::shared_ptr<const LatentTransport> transport = nullptr);

struct KeygenOptions {
  std::size_t payload_bits = kDefaultPayloadBits;
  RingPattern pattern = RingPattern::kRing;
  std::vector<double> ring_edges = default_ring_edges();
  DwtDctSvdParams dwtdctsvd;
  ShadingParams shading;
};

WatermarkKey generate_key(SchemeId scheme, Seed seed, const KeygenOptions& options = {});

// Throws kSchemeMismatch unless key.scheme() == expected.
void expect_scheme(const WatermarkKey& key, SchemeId expected);

}  // namespace wmbench
