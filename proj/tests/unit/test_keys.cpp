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

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "wmbench/error.hpp"
#include "wmbench/image_io.hpp"
#include "wmbench/schemes.hpp"
#include "wmbench/synthetic.hpp"

namespace wmbench {
namespace {

ErrorCode load_error(const std::vector<std::uint8_t>& bytes) {
  try {
    deserialize_key(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "key accepted";
  return ErrorCode::kInvalidArgument;
}

std::vector<WatermarkKey> sample_keys() {
  KeygenOptions rand;
  rand.pattern = RingPattern::kRand;
  KeygenOptions zeros;
  zeros.pattern = RingPattern::kZeros;
  zeros.payload_bits = 17;
  return {generate_key(SchemeId::kDwtDctSvd, Seed{1}), generate_key(SchemeId::kTreeRing, Seed{2}),
          generate_key(SchemeId::kTreeRing, Seed{3}, rand), generate_key(SchemeId::kTreeRing, Seed{4}, zeros),
          generate_key(SchemeId::kGaussianShading, Seed{5}), generate_key(SchemeId::kGaussianShading, Seed{6}, zeros)};
}

TEST(WatermarkBits, PackIsMsbFirstWithLengthHeader) {
  WatermarkBits w{{1, 0, 1, 1, 0, 0, 0, 0, 1}};
  const auto bytes = w.pack();
  ASSERT_EQ(bytes.size(), 4u + 2u);
  EXPECT_EQ(bytes[0], 9);
  EXPECT_EQ(bytes[1], 0);
  EXPECT_EQ(bytes[4], 0b10110000);
  EXPECT_EQ(bytes[5], 0b10000000);
  std::size_t off = 0;
  EXPECT_EQ(WatermarkBits::unpack(bytes, off), w);
  EXPECT_EQ(off, bytes.size());
}

TEST(WatermarkBits, EmptyPayloadIsRejected) {
  EXPECT_THROW(WatermarkBits{}.pack(), Error);
  Rng rng(Seed{1});
  EXPECT_THROW(WatermarkBits::random(0, rng), Error);
}

TEST(KeyFile, HeaderLayout) {
  const WatermarkKey key = generate_key(SchemeId::kTreeRing, Seed{0x0102030405060708ULL});
  const auto bytes = serialize_key(key);
  ASSERT_GE(bytes.size(), 18u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "WMK1");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[5], 2);
  EXPECT_EQ(bytes[6], 0x08);
  EXPECT_EQ(bytes[13], 0x01);
  const std::size_t len = bytes[14] | bytes[15] << 8 | bytes[16] << 16 | bytes[17] << 24;
  EXPECT_EQ(len, bytes.size() - 18);
}

TEST(KeyFile, SaveLoadRoundTripIsByteIdentical) {
  testing::TempDir dir;
  for (const auto& key : sample_keys()) {
    key_save(key, dir / "k.wmk");
    const WatermarkKey back = key_load(dir / "k.wmk");
    EXPECT_EQ(back, key);
    EXPECT_EQ(serialize_key(back), read_file(dir / "k.wmk"));
  }
}

TEST(KeyFile, DistinctErrors) {
  const auto good = serialize_key(generate_key(SchemeId::kGaussianShading, Seed{9}));
  auto bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_EQ(load_error(bad_magic), ErrorCode::kBadMagic);
  auto bad_version = good;
  bad_version[4] = 255;
  EXPECT_EQ(load_error(bad_version), ErrorCode::kUnsupportedVersion);
  for (std::size_t cut : {std::size_t{2}, std::size_t{10}, good.size() - 1})
    EXPECT_EQ(load_error({good.begin(), good.begin() + static_cast<std::ptrdiff_t>(cut)}), ErrorCode::kTruncated) << cut;
  auto trailing = good;
  trailing.push_back(0);
  EXPECT_NE(load_error(trailing), ErrorCode::kBadMagic);
  auto bad_scheme = good;
  bad_scheme[5] = 9;
  EXPECT_EQ(load_error(bad_scheme), ErrorCode::kCorrupt);
}

TEST(KeyFile, RandomCorruptionNeverCrashes) {
  const auto good = serialize_key(generate_key(SchemeId::kTreeRing, Seed{10}));
  Rng rng(Seed{11});
  for (int i = 0; i < 500; ++i) {
    auto b = good;
    b[rng.below(b.size())] ^= static_cast<std::uint8_t>(1 + rng.below(255));
    try {
      deserialize_key(b);
    } catch (const Error&) {
    }
  }
}

TEST(Decide, IsExactlyStatisticAtLeastThreshold) {
  EXPECT_TRUE(decide(0.5, 0.5).detected);
  EXPECT_FALSE(decide(std::nextafter(0.5, 0.0), 0.5).detected);
  EXPECT_TRUE(decide(-1.0, -2.0).detected);
  const auto d = decide(0.3, 0.7);
  EXPECT_EQ(d.statistic, 0.3);
  EXPECT_EQ(d.threshold, 0.7);
}

TEST(Scheme, DetectNeedsAThreshold) {
  const auto scheme = make_scheme(generate_key(SchemeId::kGaussianShading, Seed{1}));
  const Image carrier = scheme->make_carrier(Seed{2});
  try {
    scheme->detect(carrier);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUncalibrated);
  }
  EXPECT_NO_THROW(scheme->detect(carrier, 0.5));
  scheme->set_default_threshold(0.5);
  EXPECT_EQ(scheme->detect(carrier).threshold, 0.5);
}

TEST(Scheme, ExpectSchemeAndNames) {
  const auto key = generate_key(SchemeId::kTreeRing, Seed{1});
  EXPECT_NO_THROW(expect_scheme(key, SchemeId::kTreeRing));
  try {
    expect_scheme(key, SchemeId::kDwtDctSvd);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchemeMismatch);
  }
  for (auto id : {SchemeId::kDwtDctSvd, SchemeId::kTreeRing, SchemeId::kGaussianShading})
    EXPECT_EQ(parse_scheme(scheme_name(id)), id);
  EXPECT_THROW(parse_scheme("stegastamp"), Error);
  EXPECT_EQ(parse_ring_pattern("rand"), RingPattern::kRand);
}

// Clean embed then detect for every scheme: bit schemes decode exactly,
// Tree-Ring scores above every unmarked carrier (8-bit output keeps its
// statistic off the exact maximum of 0).
TEST(Scheme, CleanRoundTripForEveryScheme) {
  const Image host = synthetic_image(Seed{3}, 128);
  for (const auto& key : sample_keys()) {
    const auto scheme = make_scheme(key);
    const Image marked = scheme->latent_based() ? scheme->embed(scheme->make_carrier(Seed{4})) : scheme->embed(host);
    const double s = scheme->statistic(marked);
    if (key.scheme() == SchemeId::kTreeRing) {
      const auto pattern = ring_pattern_name(std::get<TreeRingPayload>(key.payload).pattern);
      for (std::uint64_t i = 0; i < 20; ++i)
        EXPECT_GT(s, scheme->statistic(scheme->make_carrier(Seed{100 + i}))) << pattern;
    } else if (key.scheme() == SchemeId::kDwtDctSvd)
      EXPECT_EQ(s, 1.0);
    else
      EXPECT_GE(s, 0.98);
  }
}

TEST(Scheme, StatisticIsDeterministic) {
  const auto scheme = make_scheme(generate_key(SchemeId::kDwtDctSvd, Seed{5}));
  const Image img = synthetic_image(Seed{6}, 128);
  EXPECT_EQ(scheme->statistic(img), scheme->statistic(img));
}

}  // namespace
}  // namespace wmbench
