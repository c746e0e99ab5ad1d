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

#include "wmbench/schemes.hpp"

#include "wmbench/error.hpp"

namespace wmbench {

LatentScheme::LatentScheme(std::shared_ptr<const LatentTransport> transport) : transport_(std::move(transport)) {
  if (!transport_) transport_ = std::make_shared<IdentityTransport>();
}

Image LatentScheme::make_carrier(Seed seed) const { return transport_->generate(Latent::gaussian(seed)); }

Image LatentScheme::embed(const Image& img) const { return transport_->generate(mark(transport_->invert(img))); }

TreeRingScheme::TreeRingScheme(const TreeRingPayload& payload, Seed seed,
                               std::shared_ptr<const LatentTransport> transport)
    : LatentScheme(std::move(transport)), key_(ring_key_generate(payload, seed)) {}

GaussianShadingScheme::GaussianShadingScheme(GaussianShadingPayload key,
                                             std::shared_ptr<const LatentTransport> transport)
    : LatentScheme(std::move(transport)), key_(std::move(key)) {
  gs_replication(key_.bits.size());
}

std::unique_ptr<Scheme> make_scheme(const WatermarkKey& key, std::shared_ptr<const LatentTransport> transport) {
  switch (key.scheme()) {
    case SchemeId::kDwtDctSvd: return std::make_unique<DwtDctSvdScheme>(std::get<DwtDctSvdPayload>(key.payload));
    case SchemeId::kTreeRing:
      return std::make_unique<TreeRingScheme>(std::get<TreeRingPayload>(key.payload), key.seed, std::move(transport));
    case SchemeId::kGaussianShading:
      return std::make_unique<GaussianShadingScheme>(std::get<GaussianShadingPayload>(key.payload),
                                                     std::move(transport));
  }
  fail(ErrorCode::kInvalidArgument, "unknown scheme");
}

WatermarkKey generate_key(SchemeId scheme, Seed seed, const KeygenOptions& o) {
  WatermarkKey key;
  key.seed = seed;
  const Seed payload_seed = derive_seed(seed, {static_cast<std::uint64_t>(scheme)});
  switch (scheme) {
    case SchemeId::kDwtDctSvd: key.payload = dds_key_generate(payload_seed, o.payload_bits, o.dwtdctsvd); break;
    case SchemeId::kTreeRing: {
      TreeRingPayload p = tr_key_generate(o.pattern, o.ring_edges);
      ring_key_generate(p, seed);  // validates the descriptor
      key.payload = std::move(p);
      break;
    }
    case SchemeId::kGaussianShading: key.payload = gs_key_generate(payload_seed, o.payload_bits, o.shading); break;
  }
  return key;
}

void expect_scheme(const WatermarkKey& key, SchemeId expected) {
  if (key.scheme() != expected)
    fail(ErrorCode::kSchemeMismatch, "key is for " + std::string(scheme_name(key.scheme())) + ", expected " +
                                         std::string(scheme_name(expected)));
}

}  // namespace wmbench
