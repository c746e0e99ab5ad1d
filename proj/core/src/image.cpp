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

#include "wmbench/image.hpp"

#include <algorithm>
#include <cmath>

#include "wmbench/error.hpp"

namespace wmbench {

Image::Image(int w, int h, int c, double fill) : width(w), height(h), channels(c) {
  require(w > 0 && h > 0, "image dimensions must be positive");
  require(c == 1 || c == 3, "image must have 1 or 3 channels");
  data.assign(plane_size() * static_cast<std::size_t>(c), fill);
}

void validate(const Image& img) {
  require(img.width > 0 && img.height > 0, "image dimensions must be positive");
  require(img.channels == 1 || img.channels == 3, "image must have 1 or 3 channels");
  require(img.data.size() == img.plane_size() * static_cast<std::size_t>(img.channels),
          "image buffer length does not match its geometry");
  for (double v : img.data) require(std::isfinite(v), "image contains a non-finite sample");
}

void clamp_unit(Image& img) noexcept {
  for (double& v : img.data) v = std::clamp(v, 0.0, 1.0);
}

Image clamped(Image img) noexcept {
  clamp_unit(img);
  return img;
}

Image to_gray(const Image& img) {
  if (img.channels == 1) return img;
  Image out(img.width, img.height, 1);
  auto r = img.plane(0), g = img.plane(1), b = img.plane(2);
  auto y = out.plane(0);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = 0.299 * r[i] + 0.587 * g[i] + 0.114 * b[i];
  return out;
}

Image to_rgb(const Image& img) {
  if (img.channels == 3) return img;
  Image out(img.width, img.height, 3);
  for (int c = 0; c < 3; ++c) std::ranges::copy(img.plane(0), out.plane(c).begin());
  return out;
}

Image center_crop_square(const Image& img) {
  const int side = std::min(img.width, img.height);
  const int x0 = (img.width - side) / 2;
  const int y0 = (img.height - side) / 2;
  Image out(side, side, img.channels);
  for (int c = 0; c < img.channels; ++c)
    for (int y = 0; y < side; ++y)
      for (int x = 0; x < side; ++x) out.at(c, y, x) = img.at(c, y + y0, x + x0);
  return out;
}

namespace {

struct Tap {
  int i0, i1;
  double w1;
};

std::vector<Tap> bilinear_taps(int src, int dst) {
  std::vector<Tap> taps(static_cast<std::size_t>(dst));
  const double scale = static_cast<double>(src) / dst;
  for (int i = 0; i < dst; ++i) {
    double pos = (i + 0.5) * scale - 0.5;
    pos = std::clamp(pos, 0.0, static_cast<double>(src - 1));
    const int i0 = static_cast<int>(std::floor(pos));
    const int i1 = std::min(i0 + 1, src - 1);
    taps[static_cast<std::size_t>(i)] = {i0, i1, pos - i0};
  }
  return taps;
}

}  // namespace

Image resize_bilinear(const Image& img, int width, int height) {
  require(width > 0 && height > 0, "resize target must be positive");
  if (width == img.width && height == img.height) return img;
  const auto tx = bilinear_taps(img.width, width);
  const auto ty = bilinear_taps(img.height, height);
  Image out(width, height, img.channels);
  for (int c = 0; c < img.channels; ++c) {
    for (int y = 0; y < height; ++y) {
      const Tap& vy = ty[static_cast<std::size_t>(y)];
      for (int x = 0; x < width; ++x) {
        const Tap& vx = tx[static_cast<std::size_t>(x)];
        const double top = img.at(c, vy.i0, vx.i0) * (1.0 - vx.w1) + img.at(c, vy.i0, vx.i1) * vx.w1;
        const double bot = img.at(c, vy.i1, vx.i0) * (1.0 - vx.w1) + img.at(c, vy.i1, vx.i1) * vx.w1;
        out.at(c, y, x) = top * (1.0 - vy.w1) + bot * vy.w1;
      }
    }
  }
  return out;
}

Image gaussian_blur(const Image& img, double sigma, int radius) {
  require(sigma > 0.0 && radius >= 0, "blur sigma must be positive");
  std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
  double total = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    const double w = std::exp(-(k * k) / (2.0 * sigma * sigma));
    kernel[static_cast<std::size_t>(k + radius)] = w;
    total += w;
  }
  for (double& w : kernel) w /= total;

  const int w = img.width, h = img.height;
  Image tmp = img;
  Image out = img;
  for (int c = 0; c < img.channels; ++c) {
    auto src = img.plane(c);
    auto mid = tmp.plane(c);
    for (int y = 0; y < h; ++y) {
      const double* row = src.data() + static_cast<std::size_t>(y) * w;
      double* dst = mid.data() + static_cast<std::size_t>(y) * w;
      for (int x = 0; x < w; ++x) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k)
          acc += kernel[static_cast<std::size_t>(k + radius)] * row[std::clamp(x + k, 0, w - 1)];
        dst[x] = acc;
      }
    }
    auto fin = out.plane(c);
    for (int y = 0; y < h; ++y) {
      double* dst = fin.data() + static_cast<std::size_t>(y) * w;
      for (int x = 0; x < w; ++x) dst[x] = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        const double kw = kernel[static_cast<std::size_t>(k + radius)];
        const double* row = mid.data() + static_cast<std::size_t>(std::clamp(y + k, 0, h - 1)) * w;
        for (int x = 0; x < w; ++x) dst[x] += kw * row[x];
      }
    }
  }
  return out;
}

}  // namespace wmbench
