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

#include <cmath>

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "test_support.hpp"
#include "wmbench/attacks.hpp"
#include "wmbench/dwtdctsvd.hpp"
#include "wmbench/error.hpp"
#include "wmbench/metrics.hpp"
#include "wmbench/synthetic.hpp"

namespace wmbench {
namespace {

double accuracy(const WatermarkBits& a, const WatermarkBits& b) {
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a.bits[i] == b.bits[i];
  return static_cast<double>(same) / static_cast<double>(a.size());
}

TEST(Qim, BitLandsOnTheMatchingLatticeParityPerRecomputedSvd) {
  Rng rng(Seed{1});
  for (int trial = 0; trial < 50; ++trial) {
    const Grid block = testing::random_grid(rng, 8, 8, -20, 20);
    const int bit = static_cast<int>(rng.below(2));
    const double step = 0.5 + rng.uniform();
    const Grid marked = qim_embed_block(block, bit, step);
    const Eigen::JacobiSVD<Eigen::MatrixXd> ref(marked);
    const double s0 = ref.singularValues()[0];
    const long cell = std::lround(s0 / step);
    EXPECT_NEAR(s0 / step, static_cast<double>(cell), 1e-9);
    EXPECT_EQ(cell & 1, bit);
    EXPECT_EQ(qim_extract_block(marked, step), bit);
  }
  EXPECT_THROW(qim_embed_block(Grid::Zero(8, 8), 1, 0.0), Error);
}

TEST(Dds, CleanRoundTripOverSeededKeysAndImages) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto key = dds_key_generate(Seed{s});
    const Image img = synthetic_image(Seed{1000 + s}, 128);
    const Image marked = dds_embed(key.bits, img, key.params);
    ASSERT_EQ(dds_extract(marked, key.bits.size(), key.params), key.bits) << s;
  }
}

TEST(Dds, PerceptualBudget) {
  double worst_psnr = 1e9, worst_linf = 0.0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto key = dds_key_generate(Seed{s});
    const Image img = synthetic_image(Seed{50 + s}, 256);
    const Image marked = dds_embed(key.bits, img, key.params);
    ASSERT_TRUE(marked.same_shape(img));
    worst_psnr = std::min(worst_psnr, psnr(img, marked));
    for (std::size_t i = 0; i < img.data.size(); ++i) worst_linf = std::max(worst_linf, std::abs(img.data[i] - marked.data[i]));
  }
  EXPECT_GE(worst_psnr, 35.0);
  EXPECT_LT(worst_linf, 0.25);
}

TEST(Dds, SizeAndParameterPreconditions) {
  const auto key = dds_key_generate(Seed{1});
  EXPECT_NO_THROW(dds_embed(key.bits, synthetic_image(Seed{2}, kDdsMinSide), key.params));
  try {
    dds_embed(key.bits, synthetic_image(Seed{2}, kDdsMinSide - 1), key.params);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeTooSmall);
  }
  DwtDctSvdParams zero = key.params;
  zero.embed_strength = 0.0;
  EXPECT_THROW(dds_embed(key.bits, synthetic_image(Seed{2}, 128), zero), Error);
  EXPECT_THROW(dds_embed(key.bits, Image(128, 128, 1, 0.5), key.params), Error);
}

TEST(Dds, UnwatermarkedImagesDecodeAtChance) {
  double sum = 0.0;
  const int n = 40;
  for (int s = 0; s < n; ++s) {
    const auto key = dds_key_generate(Seed{static_cast<std::uint64_t>(s)});
    sum += dds_statistic(key, synthetic_image(Seed{static_cast<std::uint64_t>(500 + s)}, 128));
  }
  // 40 x 64 bits: standard error of the mean ~ 0.01.
  EXPECT_NEAR(sum / n, 0.5, 0.04);
}

TEST(Dds, NoiseDegradesMonotonically) {
  const double sigmas[] = {0.0, 0.01, 0.05, 0.1};
  std::vector<double> mean(4, 0.0);
  const int n = 20;
  for (int s = 0; s < n; ++s) {
    const auto key = dds_key_generate(Seed{static_cast<std::uint64_t>(s)});
    const Image marked = dds_embed(key.bits, synthetic_image(Seed{static_cast<std::uint64_t>(700 + s)}, 128), key.params);
    for (int k = 0; k < 4; ++k) {
      const Image noisy = sigmas[k] > 0 ? gaussian_noise(marked, sigmas[k], Seed{static_cast<std::uint64_t>(s)}) : marked;
      mean[k] += dds_statistic(key, noisy) / n;
    }
  }
  EXPECT_NEAR(mean[0], 1.0, 1e-12);
  for (int k = 1; k < 4; ++k) EXPECT_LE(mean[k], mean[k - 1]);
  EXPECT_LE(testing::spearman({0.0, 0.01, 0.05, 0.1}, mean), -0.9);
  EXPECT_GT(mean[2], 0.5);
  EXPECT_LT(mean[2], 1.0);
}

TEST(Dds, WrongKeyDecodesAtChance) {
  const auto a = dds_key_generate(Seed{1}), b = dds_key_generate(Seed{2});
  const Image marked = dds_embed(a.bits, synthetic_image(Seed{3}, 256), a.params);
  EXPECT_EQ(dds_statistic(a, marked), 1.0);
  EXPECT_NEAR(accuracy(a.bits, b.bits), dds_statistic(b, marked), 1e-12);
}

}  // namespace
}  // namespace wmbench
