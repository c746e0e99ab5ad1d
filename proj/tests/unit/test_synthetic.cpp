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
#include "wmbench/image_io.hpp"
#include "wmbench/synthetic.hpp"

namespace wmbench {
namespace {

TEST(Synthetic, DeterministicInSeedAndInRange) {
  const Image a = synthetic_image(Seed{1}, 64);
  EXPECT_EQ(a, synthetic_image(Seed{1}, 64));
  EXPECT_NE(a, synthetic_image(Seed{2}, 64));
  EXPECT_EQ(a.width, 64);
  EXPECT_EQ(a.channels, 3);
  for (double v : a.data) {
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 1.0);
  }
}

TEST(Synthetic, CorpusWritesNumberedPngs) {
  testing::TempDir dir;
  write_synthetic_corpus(dir.path(), 3, 32, Seed{7});
  for (const char* name : {"scene-000.png", "scene-001.png", "scene-002.png"}) {
    const Image img = load_image(dir / name);
    EXPECT_EQ(img.width, 32);
  }
  EXPECT_FALSE(std::filesystem::exists(dir / "scene-003.png"));
}

}  // namespace
}  // namespace wmbench
