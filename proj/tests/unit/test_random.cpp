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
#include <set>

#include <gtest/gtest.h>

#include "wmbench/random.hpp"

namespace wmbench {
namespace {

TEST(Mix64, MatchesSplitMix64ReferenceOutputs) {
  // First outputs of the reference splitmix64 generator seeded with 0.
  EXPECT_EQ(mix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(mix64(0x9e3779b97f4a7c15ULL), 0x6e789e6aa1b965f4ULL);
}

TEST(DeriveSeed, DependsOnOrderAndBase) {
  const Seed a = derive_seed(Seed{1}, {2, 3});
  EXPECT_EQ(a, derive_seed(Seed{1}, {2, 3}));
  EXPECT_NE(a, derive_seed(Seed{1}, {3, 2}));
  EXPECT_NE(a, derive_seed(Seed{2}, {2, 3}));
  EXPECT_NE(derive_seed(Seed{1}, {}), derive_seed(Seed{1}, {0}));
}

TEST(DeriveSeed, NoCollisionsOverASmallGrid) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 64; ++i)
    for (std::uint64_t j = 0; j < 64; ++j) seen.insert(derive_seed(Seed{7}, {i, j}).value);
  EXPECT_EQ(seen.size(), 64u * 64u);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(Seed{42}), b(Seed{42});
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(a.next_u64(), b.next_u64());
    EXPECT_EQ(a.normal(), b.normal());
  }
}

TEST(Rng, UniformInUnitInterval) {
  Rng r(Seed{3});
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // 1/12 variance -> standard error of the mean ~ 0.0009.
  EXPECT_NEAR(sum / n, 0.5, 0.005);
}

TEST(Rng, NormalMomentsWithinFiveStandardErrors) {
  Rng r(Seed{5});
  const int n = 200000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    s1 += x;
    s2 += x * x;
  }
  const double mean = s1 / n, var = s2 / n - mean * mean;
  EXPECT_NEAR(mean, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(var, 1.0, 5.0 * std::sqrt(2.0 / n));
}

TEST(Rng, BelowStaysInRangeAndHitsEveryValue) {
  Rng r(Seed{9});
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = r.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_THROW(r.below(0), std::exception);
}

}  // namespace
}  // namespace wmbench
