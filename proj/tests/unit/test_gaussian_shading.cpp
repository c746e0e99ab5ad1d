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

#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "wmbench/attacks.hpp"
#include "wmbench/chacha20.hpp"
#include "wmbench/error.hpp"
#include "wmbench/gaussian_shading.hpp"
#include "wmbench/latent.hpp"
#include "wmbench/metrics.hpp"

namespace wmbench {
namespace {

Latent signs_of(const Latent& z) {
  Latent s;
  for (std::size_t i = 0; i < z.data.size(); ++i) s.data[i] = z.data[i] >= 0 ? 1.0 : -1.0;
  return s;
}

// Key generation rejects sigma <= 0, so the boundary case is set directly.
GaussianShadingPayload key_with_sigma(std::uint64_t seed, double sigma) {
  auto key = gs_key_generate(Seed{seed});
  key.params.sigma = sigma;
  return key;
}

TEST(GaussianShading, Replication) {
  EXPECT_EQ(gs_replication(64), 256u);
  EXPECT_EQ(gs_replication(100), 163u);
  EXPECT_EQ(gs_replication(Latent::kSize), 1u);
  EXPECT_THROW(gs_replication(Latent::kSize + 1), Error);
  EXPECT_THROW(gs_replication(0), Error);
}

TEST(GaussianShading, RandomizedPatternIsSignsOfTheKeystreamXor) {
  const auto key = gs_key_generate(Seed{1});
  const Latent w = gs_randomize(key);
  const auto ks = chacha20_keystream(key.cipher_key, key.nonce, 0, Latent::kSize / 8);
  const std::size_t len = key.bits.size(), covered = gs_replication(len) * len;
  for (std::size_t j = 0; j < Latent::kSize; ++j) {
    const int kbit = (ks[j / 8] >> (7 - j % 8)) & 1;
    const int bit = (j < covered ? key.bits.bits[j % len] : 0) ^ kbit;
    ASSERT_EQ(w.data[j], bit ? 1.0 : -1.0) << j;
  }
}

TEST(GaussianShading, KeystreamBalance) {
  const Latent w = gs_randomize(gs_key_generate(Seed{2}));
  const double mean = std::accumulate(w.data.begin(), w.data.end(), 0.0) / Latent::kSize;
  EXPECT_LT(std::abs(mean), 3.0 / std::sqrt(static_cast<double>(Latent::kSize)));
}

TEST(GaussianShading, DecryptOfRandomizeIsIdentityOverThousandCases) {
  Rng rng(Seed{3});
  for (int i = 0; i < 1000; ++i) {
    auto key = gs_key_generate(Seed{rng.next_u64()}, 1 + rng.below(512));
    ASSERT_EQ(gs_decrypt(gs_randomize(key), key), key.bits) << i;
  }
}

// Moment oracle from z' = z + sigma W' with W' in {-1, +1}:
// Var = 1 + sigma^2, and the variance estimator has standard error
// sqrt((mu4 - Var^2) / N) with mu4 - Var^2 = 2 + 4 sigma^2.
TEST(GaussianShading, EmbeddedVarianceWithinThreeStandardErrors) {
  for (double sigma : {0.2, 1.0}) {
    const auto key = key_with_sigma(4, sigma);
    const Latent z = gs_embed_latent(key, Latent::gaussian(Seed{5}));
    const double n = static_cast<double>(z.data.size());
    const double mean = std::accumulate(z.data.begin(), z.data.end(), 0.0) / n;
    double var = 0.0;
    for (double v : z.data) var += (v - mean) * (v - mean);
    var /= n;
    const double se = std::sqrt((2.0 + 4.0 * sigma * sigma) / n);
    EXPECT_LT(std::abs(var - (1.0 + sigma * sigma)), 3.0 * se) << sigma;
  }
}

TEST(GaussianShading, ZeroSigmaLeavesTheLatentUnchanged) {
  const auto key = key_with_sigma(6, 0.0);
  const Latent z = Latent::gaussian(Seed{7});
  EXPECT_EQ(gs_embed_latent(key, z), z);
}

TEST(GaussianShading, IdentityTransportRecoversTheEmbeddedLatent) {
  const auto key = gs_key_generate(Seed{8});
  const IdentityTransport t;
  const auto [z, img] = gs_embed(key, Seed{9}, t);
  const Latent back = t.invert(img);
  for (std::size_t i = 0; i < z.data.size(); ++i) ASSERT_NEAR(back.data[i], z.data[i], 1e-9);
}

TEST(GaussianShading, CleanAccuracyAndWrongKey) {
  const IdentityTransport t;
  double clean = 0.0, strong = 1.0, wrong = 0.0;
  const int n = 50;
  for (int i = 0; i < n; ++i) {
    const auto key = gs_key_generate(Seed{100 + static_cast<std::uint64_t>(i)});
    const auto other = gs_key_generate(Seed{900 + static_cast<std::uint64_t>(i)});
    const Image img = gs_embed(key, Seed{static_cast<std::uint64_t>(i)}, t).second;
    clean += gs_statistic(key, img, t) / n;
    wrong += gs_statistic(other, img, t) / n;
    const auto key1 = key_with_sigma(300 + static_cast<std::uint64_t>(i), 1.0);
    strong = std::min(strong, gs_statistic(key1, gs_embed(key1, Seed{static_cast<std::uint64_t>(i)}, t).second, t));
  }
  EXPECT_GE(clean, 0.99);
  EXPECT_EQ(strong, 1.0);
  // 50 x 64 bits at chance: standard error ~ 0.009.
  EXPECT_NEAR(wrong, 0.5, 0.04);
}

// Clamping to [0, 1] leaves a faint residual even under heavy noise, so
// the ladder runs until the image is mostly saturated.
TEST(GaussianShading, ImageNoiseDegradesTowardsChance) {
  const IdentityTransport t;
  const std::vector<double> sigmas{0.0, 0.05, 0.1, 0.3, 1.0, 3.0};
  std::vector<double> mean(sigmas.size(), 0.0);
  const int n = 20;
  for (int i = 0; i < n; ++i) {
    const auto key = gs_key_generate(Seed{static_cast<std::uint64_t>(i)});
    const Image img = gs_embed(key, Seed{50 + static_cast<std::uint64_t>(i)}, t).second;
    for (std::size_t k = 0; k < sigmas.size(); ++k) {
      const Image noisy = sigmas[k] > 0 ? gaussian_noise(img, sigmas[k], Seed{static_cast<std::uint64_t>(i)}) : img;
      mean[k] += gs_statistic(key, noisy, t) / n;
    }
  }
  for (std::size_t k = 1; k < sigmas.size(); ++k) EXPECT_LT(mean[k], mean[k - 1]) << sigmas[k];
  EXPECT_GT(mean[1], 0.5);
  EXPECT_NEAR(mean.back(), 0.5, 0.05);
}

TEST(GaussianShading, AccuracyIsInvariantUnderAConsistentBitPermutation) {
  const IdentityTransport t;
  const auto key = gs_key_generate(Seed{10});
  const Image img = gaussian_noise(gs_embed(key, Seed{11}, t).second, 0.05, Seed{12});
  const WatermarkBits decoded = gs_extract(key, img, t);
  std::vector<std::size_t> perm(key.bits.size());
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(Seed{13});
  for (std::size_t i = perm.size() - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
  WatermarkBits pd, pk;
  for (auto p : perm) {
    pd.bits.push_back(decoded.bits[p]);
    pk.bits.push_back(key.bits.bits[p]);
  }
  EXPECT_EQ(bit_accuracy(pd, pk), bit_accuracy(decoded, key.bits));
  EXPECT_EQ(bit_accuracy(decoded, key.bits), gs_statistic(key, img, t));
}

TEST(GaussianShading, DecoderUsesSignsAboutTheMedian) {
  const auto key = gs_key_generate(Seed{14});
  const Latent z = gs_embed_latent(key, Latent::gaussian(Seed{15}));
  EXPECT_EQ(gs_decrypt(signs_of(z), key), key.bits);
}

}  // namespace
}  // namespace wmbench
