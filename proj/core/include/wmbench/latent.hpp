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
#include <string>
#include <string_view>
#include <vector>

#include "wmbench/image.hpp"
#include "wmbench/random.hpp"
#include "wmbench/transforms.hpp"

namespace wmbench {

class ServiceClient;

// Stand-in for a diffusion initial-noise tensor: 4 channels of 64x64,
// stored channel-major.
struct Latent {
  static constexpr int kChannels = 4;
  static constexpr int kSide = 64;
  static constexpr std::size_t kPlane = static_cast<std::size_t>(kSide) * kSide;
  static constexpr std::size_t kSize = kPlane * kChannels;

  std::vector<double> data = std::vector<double>(kSize, 0.0);

  static Latent gaussian(Seed seed);

  double& at(int c, int y, int x) { return data[c * kPlane + static_cast<std::size_t>(y) * kSide + x]; }
  double at(int c, int y, int x) const { return data[c * kPlane + static_cast<std::size_t>(y) * kSide + x]; }
  Grid channel(int c) const;
  void set_channel(int c, const Grid& grid);

  friend bool operator==(const Latent&, const Latent&) = default;
};

// Throws kInvalidArgument for a wrong element count or non-finite values.
void validate(const Latent& z);

// Maps between latents and pixels. Implementations must be thread-safe for
// concurrent const use.
class LatentTransport {
 public:
  virtual ~LatentTransport() = default;
  virtual std::string_view name() const = 0;
  virtual Image generate(const Latent& z) const = 0;
  virtual Latent invert(const Image& img) const = 0;
};

// Lays the four channels out as 2x2 tiles of a 128x128 gray image,
// pixel = offset + gain * z. With the defaults the map stays inside [0, 1]
// for |z| < 6, and a x2 brightness change stays unclipped, so
// invert(generate(z)) == z up to rounding for any realistic latent.
class IdentityTransport : public LatentTransport {
 public:
  static constexpr double kDefaultOffset = 0.25;
  // Lower gains make latent marks fade sooner under the paraphrase surrogate;
  // 0.04 keeps 8-bit quantization well below the latent noise.
  static constexpr double kDefaultGain = 0.04;

  explicit IdentityTransport(double offset = kDefaultOffset, double gain = kDefaultGain);
  std::string_view name() const override { return "identity"; }
  Image generate(const Latent& z) const override;
  Latent invert(const Image& img) const override;

  double offset() const { return offset_; }
  double gain() const { return gain_; }

 protected:
  Image pack(const Latent& z) const;
  Latent unpack(const Image& img) const;

 private:
  double offset_;
  double gain_;
};

// Mixes each channel with a fixed seeded orthogonal map Q_L X Q_R^T before
// the identity layout, so pixel-space edits land on every latent element.
class ToyTransport : public IdentityTransport {
 public:
  explicit ToyTransport(Seed seed);
  std::string_view name() const override { return "toy"; }
  Image generate(const Latent& z) const override;
  Latent invert(const Image& img) const override;

 private:
  std::vector<Grid> left_;
  std::vector<Grid> right_;
};

// Delegates to a remote VAE/inversion service (POST /latent/generate and
// /latent/invert). No exactness contract; failures raise kTransport.
class ExternalTransport : public LatentTransport {
 public:
  explicit ExternalTransport(std::shared_ptr<const ServiceClient> client);
  std::string_view name() const override { return "external"; }
  Image generate(const Latent& z) const override;
  Latent invert(const Image& img) const override;

 private:
  std::shared_ptr<const ServiceClient> client_;
};

// Seed of the transport that goes with a key, so every entry point builds
// the same toy mixing for the same key.
Seed transport_seed(Seed key_seed) noexcept;

// "identity", "toy" (seeded) or "external" (requires a client).
std::shared_ptr<const LatentTransport> make_transport(std::string_view name, Seed seed,
                                                      std::shared_ptr<const ServiceClient> client = nullptr);

// Latent tensors on the wire: base64 of float32 little-endian values.
std::string encode_latent(const Latent& z);
Latent decode_latent(std::string_view text);

}  // namespace wmbench
