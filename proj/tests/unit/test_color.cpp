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

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "wmbench/color.hpp"
#include "wmbench/error.hpp"

namespace wmbench {
namespace {

TEST(Yuv, MatchesTheBt601FullRangeFormulas) {
  const Image rgb = testing::random_image(Seed{1}, 8, 8, 3);
  const Image yuv = rgb_to_yuv(rgb);
  const std::size_t n = rgb.plane_size();
  for (std::size_t i = 0; i < n; ++i) {
    const double r = rgb.data[i], g = rgb.data[n + i], b = rgb.data[2 * n + i];
    const double y = 0.299 * r + 0.587 * g + 0.114 * b;
    EXPECT_NEAR(yuv.data[i], y, 1e-12);
    EXPECT_NEAR(yuv.data[n + i], (b - y) / 1.772 + 0.5, 1e-12);
    EXPECT_NEAR(yuv.data[2 * n + i], (r - y) / 1.402 + 0.5, 1e-12);
  }
}

TEST(Yuv, RoundTrip) {
  const Image rgb = testing::random_image(Seed{2}, 31, 17, 3);
  const Image back = yuv_to_rgb(rgb_to_yuv(rgb));
  for (std::size_t i = 0; i < rgb.data.size(); ++i) ASSERT_NEAR(back.data[i], rgb.data[i], 1e-12);
}

TEST(Yuv, GrayHasNeutralChroma) {
  const Image yuv = rgb_to_yuv(Image(4, 4, 3, 0.3));
  for (double v : yuv.plane(1)) EXPECT_NEAR(v, 0.5, 1e-12);
  for (double v : yuv.plane(2)) EXPECT_NEAR(v, 0.5, 1e-12);
  for (double v : yuv.plane(0)) EXPECT_NEAR(v, 0.3, 1e-12);
}

TEST(Yuv, RejectsNonRgb) { EXPECT_THROW(rgb_to_yuv(Image(4, 4, 1)), Error); }

TEST(ImageOps, GrayAndRgbConversions) {
  const Image rgb = testing::random_image(Seed{3}, 5, 5, 3);
  const Image g = to_gray(rgb);
  ASSERT_EQ(g.channels, 1);
  EXPECT_NEAR(g.at(0, 2, 3), 0.299 * rgb.at(0, 2, 3) + 0.587 * rgb.at(1, 2, 3) + 0.114 * rgb.at(2, 2, 3), 1e-12);
  const Image back = to_rgb(g);
  ASSERT_EQ(back.channels, 3);
  EXPECT_EQ(back.at(1, 4, 4), g.at(0, 4, 4));
  EXPECT_EQ(to_gray(g), g);
}

TEST(ImageOps, ResizeOfConstantIsConstantAndIdentityIsExact) {
  const Image flat(13, 9, 3, 0.42);
  const Image r = resize_bilinear(flat, 29, 4);
  for (double v : r.data) EXPECT_NEAR(v, 0.42, 1e-12);
  const Image img = testing::random_image(Seed{4}, 12, 10, 1);
  const Image same = resize_bilinear(img, 12, 10);
  for (std::size_t i = 0; i < img.data.size(); ++i) EXPECT_NEAR(same.data[i], img.data[i], 1e-12);
}

TEST(ImageOps, BlurPreservesMeanOfConstantAndCrop) {
  const Image blurred = gaussian_blur(Image(9, 9, 1, 0.7), 1.5, 2);
  for (double v : blurred.data) EXPECT_NEAR(v, 0.7, 1e-12);
  const Image c = center_crop_square(testing::random_image(Seed{5}, 20, 12, 3));
  EXPECT_EQ(c.width, 12);
  EXPECT_EQ(c.height, 12);
}

TEST(ImageOps, ValidateRejectsNonFinite) {
  Image img(2, 2, 1);
  img.data[3] = std::nan("");
  EXPECT_THROW(validate(img), Error);
  img.data[3] = 0.0;
  EXPECT_NO_THROW(validate(img));
  img.data.pop_back();
  EXPECT_THROW(validate(img), Error);
}

}  // namespace
}  // namespace wmbench
