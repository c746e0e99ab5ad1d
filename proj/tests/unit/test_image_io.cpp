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
#include "wmbench/error.hpp"
#include "wmbench/image_io.hpp"

namespace wmbench {
namespace {

using testing::TempDir;

// Image whose samples are exactly representable in 8 bits.
Image byte_image(Seed seed, int w, int h, int c) {
  Image img(w, h, c);
  Rng rng(seed);
  for (double& v : img.data) v = static_cast<double>(rng.below(256)) / 255.0;
  return img;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(Quantize, RoundHalfUp) {
  EXPECT_EQ(quantize_8bit(0.0), 0);
  EXPECT_EQ(quantize_8bit(1.0), 255);
  EXPECT_EQ(quantize_8bit(0.5), 128);
  EXPECT_EQ(quantize_8bit(0.5 / 255.0), 1);
  EXPECT_EQ(quantize_8bit(0.49 / 255.0), 0);
  EXPECT_EQ(quantize_8bit(-3.0), 0);
  EXPECT_EQ(quantize_8bit(7.0), 255);
}

TEST(Png, RoundTripIsExactForByteValuedImages) {
  for (int c : {1, 3}) {
    const Image img = byte_image(Seed{static_cast<std::uint64_t>(c)}, 37, 21, c);
    const Image back = decode_image(encode_png(img));
    ASSERT_TRUE(back.same_shape(img));
    for (std::size_t i = 0; i < img.data.size(); ++i) ASSERT_DOUBLE_EQ(back.data[i], img.data[i]);
  }
}

TEST(Png, QuantizationErrorIsAtMostHalfAStep) {
  const Image img = testing::random_image(Seed{4}, 16, 16, 3);
  const Image back = decode_image(encode_png(img));
  for (std::size_t i = 0; i < img.data.size(); ++i) EXPECT_LE(std::abs(back.data[i] - img.data[i]), 0.5 / 255 + 1e-12);
}

TEST(Ppm, RoundTripAndFileExtensions) {
  TempDir dir;
  const Image rgb = byte_image(Seed{5}, 9, 7, 3);
  const Image gray = byte_image(Seed{6}, 9, 7, 1);
  save_image(rgb, dir / "a.ppm");
  save_image(gray, dir / "b.pgm");
  save_image(rgb, dir / "c.png");
  EXPECT_EQ(load_image(dir / "a.ppm"), rgb);
  EXPECT_EQ(load_image(dir / "b.pgm"), gray);
  EXPECT_EQ(load_image(dir / "c.png"), rgb);
  EXPECT_EQ(read_file(dir / "a.ppm").front(), 'P');
}

TEST(Ppm, SixteenBitSamplesScaleByMaxval) {
  std::string header = "P5\n# comment\n2 1\n65535\n";
  std::vector<std::uint8_t> bytes(header.begin(), header.end());
  for (std::uint8_t b : {0xFF, 0xFF, 0x80, 0x00}) bytes.push_back(b);
  const Image img = decode_image(bytes);
  ASSERT_EQ(img.channels, 1);
  EXPECT_DOUBLE_EQ(img.data[0], 1.0);
  EXPECT_DOUBLE_EQ(img.data[1], 32768.0 / 65535.0);
}

TEST(Jpeg, HighQualityRoundTripIsClose) {
  Image img(64, 64, 3);
  for (int c = 0; c < 3; ++c)
    for (int y = 0; y < 64; ++y)
      for (int x = 0; x < 64; ++x) img.at(c, y, x) = 0.2 + 0.6 * (x + y + 10 * c) / 150.0;
  const Image back = decode_image(encode_jpeg(img, 95));
  ASSERT_TRUE(back.same_shape(img));
  double max_err = 0.0;
  for (std::size_t i = 0; i < img.data.size(); ++i) max_err = std::max(max_err, std::abs(back.data[i] - img.data[i]));
  EXPECT_LT(max_err, 0.05);
}

TEST(Errors, AreDistinguished) {
  TempDir dir;
  EXPECT_EQ(code_of([&] { load_image(dir / "missing.png"); }), ErrorCode::kIo);
  const std::vector<std::uint8_t> junk{'h', 'e', 'l', 'l', 'o', 0, 1, 2};
  EXPECT_EQ(code_of([&] { decode_image(junk); }), ErrorCode::kUnsupportedFormat);
  auto png = encode_png(byte_image(Seed{1}, 8, 8, 3));
  png.resize(png.size() / 2);
  EXPECT_EQ(code_of([&] { decode_image(png); }), ErrorCode::kCorrupt);
  const std::string bad_pnm = "P6\n4 4\n255\n";
  EXPECT_EQ(code_of([&] { decode_image(std::vector<std::uint8_t>(bad_pnm.begin(), bad_pnm.end())); }),
            ErrorCode::kCorrupt);
  EXPECT_EQ(code_of([&] { save_image(Image(2, 2, 3), dir / "x.bmp"); }), ErrorCode::kUnsupportedFormat);
  EXPECT_EQ(code_of([&] { save_image(Image(2, 2, 3), dir / "no" / "such" / "dir.png"); }), ErrorCode::kIo);
}

TEST(Extensions, RecognizesImageFiles) {
  EXPECT_TRUE(has_image_extension("a.png"));
  EXPECT_TRUE(has_image_extension("a.JPG"));
  EXPECT_TRUE(has_image_extension("a.jpeg"));
  EXPECT_TRUE(has_image_extension("a.ppm"));
  EXPECT_FALSE(has_image_extension("a.txt"));
  EXPECT_FALSE(has_image_extension("png"));
}

}  // namespace
}  // namespace wmbench
