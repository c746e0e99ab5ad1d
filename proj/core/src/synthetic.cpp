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

#include "wmbench/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "wmbench/error.hpp"
#include "wmbench/image_io.hpp"

namespace wmbench {

Image synthetic_image(Seed seed, int side) {
  require(side >= 8, "synthetic image side must be at least 8");
  Rng rng(seed);
  Image img(side, side, 3);
  const double two_pi = 2.0 * std::numbers::pi;

  // Background: a few low-frequency waves per channel around a base colour.
  for (int c = 0; c < 3; ++c) {
    const double base = 0.15 + 0.4 * rng.uniform();
    struct Wave { double fx, fy, phase, amp; };
    Wave waves[3];
    for (auto& w : waves)
      w = {rng.uniform() * 2.0, rng.uniform() * 2.0, rng.uniform() * two_pi, 0.05 + 0.1 * rng.uniform()};
    for (int y = 0; y < side; ++y)
      for (int x = 0; x < side; ++x) {
        const double u = static_cast<double>(x) / side, v = static_cast<double>(y) / side;
        double s = base;
        for (const auto& w : waves) s += w.amp * std::sin(two_pi * (w.fx * u + w.fy * v) + w.phase);
        img.at(c, y, x) = s;
      }
  }

  // Shapes: ellipses with a soft rim, alpha-blended.
  const int shapes = 4 + static_cast<int>(rng.below(6));
  for (int k = 0; k < shapes; ++k) {
    const double cx = rng.uniform() * side, cy = rng.uniform() * side;
    const double rx = side * (0.05 + 0.2 * rng.uniform()), ry = side * (0.05 + 0.2 * rng.uniform());
    const double theta = rng.uniform() * std::numbers::pi;
    const double col[3] = {0.05 + 0.8 * rng.uniform(), 0.05 + 0.8 * rng.uniform(), 0.05 + 0.8 * rng.uniform()};
    const double alpha = 0.5 + 0.5 * rng.uniform();
    const double ct = std::cos(theta), st = std::sin(theta);
    for (int y = 0; y < side; ++y)
      for (int x = 0; x < side; ++x) {
        const double dx = x - cx, dy = y - cy;
        const double u = (ct * dx + st * dy) / rx, v = (-st * dx + ct * dy) / ry;
        const double r = std::sqrt(u * u + v * v);
        const double a = alpha * std::clamp((1.0 - r) * 8.0, 0.0, 1.0);
        if (a <= 0.0) continue;
        for (int c = 0; c < 3; ++c) img.at(c, y, x) = (1.0 - a) * img.at(c, y, x) + a * col[c];
      }
  }

  // Texture: noise at three scales with amplitude growing with scale, a
  // rough stand-in for the 1/f spectrum of photographs. Shared across
  // channels with a slight tint.
  Image grain(side, side, 1);
  for (int level = 0; level < 3; ++level) {
    const int cells = std::max(2, side >> (2 * level + 1));
    Image coarse(cells, cells, 1);
    for (auto& g : coarse.data) g = rng.normal();
    const Image up = resize_bilinear(coarse, side, side);
    const double weight = 1.0 / (1 << (2 - level));
    for (std::size_t i = 0; i < grain.data.size(); ++i) grain.data[i] += weight * up.data[i];
  }
  const double amount = 0.015 + 0.025 * rng.uniform();
  for (int c = 0; c < 3; ++c) {
    const double tint = 0.8 + 0.4 * rng.uniform();
    for (int y = 0; y < side; ++y)
      for (int x = 0; x < side; ++x) img.at(c, y, x) += amount * tint * grain.at(0, y, x);
  }
  clamp_unit(img);
  return img;
}

void write_synthetic_corpus(const std::filesystem::path& dir, std::size_t count, int side, Seed seed) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < count; ++i)
    save_image(synthetic_image(derive_seed(seed, {i}), side), dir / fmt::format("scene-{:03d}.png", i));
}

}  // namespace wmbench
