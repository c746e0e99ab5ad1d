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

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "wmbench/image.hpp"
#include "wmbench/watermark.hpp"

namespace wmbench {

class ServiceClient;

// Fraction of matching bits. Throws kInvalidArgument on length mismatch.
double bit_accuracy(const WatermarkBits& a, const WatermarkBits& b);

// 10 log10(1 / MSE) on the [0, 1] scale; +infinity for identical inputs.
double psnr(const Image& a, const Image& b);

// Mean SSIM over all 8x8 windows (stride 1) and channels, uniform weights,
// C1 = 0.01^2, C2 = 0.03^2. Windows shrink to the image size for images
// smaller than 8 pixels.
double ssim(const Image& a, const Image& b);

// Maps an image to a fixed-length feature vector.
class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::vector<double> embed(const Image& img) const = 0;
};

// Gray -> bilinear 32x32 -> orthonormal DCT -> 8x8 low-frequency corner
// without DC -> L2 normalized (zeros stay zeros). 63 values.
std::vector<double> default_embedding(const Image& img);

class DctEmbedder : public Embedder {
 public:
  std::vector<double> embed(const Image& img) const override { return default_embedding(img); }
};

// Gray, bilinear 8x8, raw intensities. Distinguishes flat images, which the
// DCT embedder maps to zero.
class PixelEmbedder : public Embedder {
 public:
  std::vector<double> embed(const Image& img) const override;
};

// Delegates to the service's /embedding endpoint.
class RemoteEmbedder : public Embedder {
 public:
  explicit RemoteEmbedder(std::shared_ptr<const ServiceClient> client) : client_(std::move(client)) {}
  std::vector<double> embed(const Image& img) const override;

 private:
  std::shared_ptr<const ServiceClient> client_;
};

// Median of the pairwise Euclidean distances over the pooled sample
// (falls back to 1 when that median is 0).
double median_bandwidth(std::span<const std::vector<double>> a, std::span<const std::vector<double>> b);

// Squared MMD with k(x, y) = exp(-|x - y|^2 / (2 bw^2)), V-statistic form
// (diagonal terms included). Exactly 0 for identical samples, symmetric,
// order-invariant. Each set needs at least 2 vectors of equal length.
double mmd_squared(std::span<const std::vector<double>> a, std::span<const std::vector<double>> b,
                   std::optional<double> bandwidth = std::nullopt);

double mmd_distortion(std::span<const Image> a, std::span<const Image> b, const Embedder& embedder,
                      std::optional<double> bandwidth = std::nullopt);

}  // namespace wmbench
