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
#include "wmbench/latent.hpp"

namespace wmbench {
namespace {

double max_diff(const Latent& a, const Latent& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

TEST(IdentityTransport, LayoutAndExactInverse) {
  const IdentityTransport t;
  const Latent z = Latent::gaussian(Seed{1});
  const Image img = t.generate(z);
  EXPECT_EQ(img.width, 128);
  EXPECT_EQ(img.height, 128);
  EXPECT_EQ(img.channels, 1);
  // Channel 1 is the top-right tile, channel 2 bottom-left.
  EXPECT_NEAR(img.at(0, 5, 64 + 7), t.offset() + t.gain() * z.at(1, 5, 7), 1e-15);
  EXPECT_NEAR(img.at(0, 64 + 5, 7), t.offset() + t.gain() * z.at(2, 5, 7), 1e-15);
  EXPECT_LT(max_diff(t.invert(img), z), 1e-12);
  for (double v : img.data) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(IdentityTransport, InvertAcceptsRgbAndRejectsWrongSize) {
  const IdentityTransport t;
  const Latent z = Latent::gaussian(Seed{2});
  EXPECT_LT(max_diff(t.invert(to_rgb(t.generate(z))), z), 1e-12);
  EXPECT_THROW(t.invert(Image(64, 64, 1, 0.5)), Error);
  EXPECT_THROW(IdentityTransport(0.25, 0.0), Error);
}

TEST(ToyTransport, InverseWithinTolerance) {
  const ToyTransport t(Seed{3});
  const Latent z = Latent::gaussian(Seed{4});
  EXPECT_LT(max_diff(t.invert(t.generate(z)), z), 1e-6);
  // The mix spreads a single-pixel edit across the whole channel.
  Image img = t.generate(z);
  img.at(0, 10, 10) += 0.01;
  const Latent moved = t.invert(img);
  int changed = 0;
  for (std::size_t i = 0; i < Latent::kPlane; ++i) changed += std::abs(moved.data[i] - z.data[i]) > 1e-9;
  EXPECT_GT(changed, 1000);
  EXPECT_EQ(ToyTransport(Seed{3}).generate(z), t.generate(z));
}

TEST(Transports, Factory) {
  EXPECT_EQ(make_transport("identity", Seed{1})->name(), "identity");
  EXPECT_EQ(make_transport("toy", Seed{1})->name(), "toy");
  try {
    make_transport("external", Seed{1});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTransport);
  }
  EXPECT_THROW(make_transport("vae", Seed{1}), Error);
  EXPECT_EQ(transport_seed(Seed{5}), transport_seed(Seed{5}));
  EXPECT_NE(transport_seed(Seed{5}), Seed{5});
}

TEST(LatentValidation, ShapeAndFiniteness) {
  Latent z;
  EXPECT_NO_THROW(validate(z));
  z.data[3] = std::nan("");
  EXPECT_THROW(validate(z), Error);
  z.data.resize(10);
  EXPECT_THROW(validate(z), Error);
}

}  // namespace
}  // namespace wmbench
